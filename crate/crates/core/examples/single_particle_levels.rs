//! Single-particle levels of the dangling-bond model and the a_C/a_N mixing.

use nvlevels::nvmodel::{single_particle_levels, SingleParticleParams};

fn main() {
    let p = SingleParticleParams::default();
    let l = single_particle_levels(&p);
    println!("v_c = {}, v_n = {}, h_c = {}, h_n = {}", p.v_c, p.v_n, p.h_c, p.h_n);
    println!("a1(1) = {:.4}", l.a1_lower);
    println!("a1(2) = {:.4}", l.a1_upper);
    println!("e     = {:.4} (x), {:.4} (y)", l.ex, l.ey);
    println!("a1(1) = {:.4} a_C + {:.4} a_N", l.alpha, l.beta);
    let (a, b) = l.numerical_mixing(&p);
    println!("numerical mixing: {a:.4}, {b:.4}");
}
