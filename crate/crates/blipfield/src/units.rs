use crate::error::{Error, Result};

/// Physical constants carried through every formula.
///
/// Defaults to natural units (`hbar = c = eps0 = area = 1`); switching to SI
/// is a configuration change only. `area` is the transverse cross-section
/// inhabited by the one-dimensional field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    hbar: f64,
    c: f64,
    eps0: f64,
    area: f64,
}

impl Default for Units {
    fn default() -> Self {
        Self::natural()
    }
}

impl Units {
    /// Natural units: all four constants equal to one.
    pub fn natural() -> Self {
        Units { hbar: 1.0, c: 1.0, eps0: 1.0, area: 1.0 }
    }

    pub fn new(hbar: f64, c: f64, eps0: f64, area: f64) -> Result<Self> {
        for (what, value) in [("hbar", hbar), ("c", c), ("eps0", eps0), ("area", area)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositive { what, value });
            }
        }
        let u = Units { hbar, c, eps0, area };
        if !u.omega0_sq().is_finite() {
            return Err(Error::NonPositive { what: "omega0_sq", value: u.omega0_sq() });
        }
        Ok(u)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn area(&self) -> f64 {
        self.area
    }

    /// Square of the field-amplitude constant: `2 hbar / (eps0 * area * c)`.
    pub fn omega0_sq(&self) -> f64 {
        2.0 * self.hbar / (self.eps0 * self.area * self.c)
    }

    /// The field-amplitude constant itself.
    pub fn omega0(&self) -> f64 {
        self.omega0_sq().sqrt()
    }
}
