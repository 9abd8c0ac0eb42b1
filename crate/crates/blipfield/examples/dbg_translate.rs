use blipfield::dynamics::{best_translate_distance, evolve, PropagatorKind};
use blipfield::packet::gaussian_packet;
use blipfield::{Polarization, Sign, SpatialGrid, Units};

fn main() {
    let g = SpatialGrid::centered(200.0, 1024).unwrap();
    let u = Units::natural();
    let psi = gaussian_packet(&g, -8.377042941567634, 0.6675225873128817, 5.659209918607631, Sign::Plus, Polarization::H).unwrap();
    let t = 0.0;
    let e = evolve(&psi, t, PropagatorKind::Blip, &u);
    let d = best_translate_distance(&psi, &e);
    println!("distance = {d:e}");
    println!("norms {} {}", psi.norm_sq(), e.norm_sq());
}
