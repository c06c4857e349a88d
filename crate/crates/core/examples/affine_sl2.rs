//! With no torus factor, the affine closure is always finite while the
//! projective one is finite exactly when the top-degree forms coincide.

use orbclose::{decide, ComponentSpec, GaussianRational, Mode, ProblemSpec};

fn forms(top_roots: [i64; 2]) -> Vec<ComponentSpec> {
    vec![
        ComponentSpec::new(vec![], 2).with_root(GaussianRational::from(1), 2),
        ComponentSpec::new(vec![], 3).with_root(GaussianRational::from(top_roots[0]), 3),
        ComponentSpec::new(vec![], 3).with_root(GaussianRational::from(top_roots[1]), 3),
    ]
}

fn main() -> orbclose::Result<()> {
    for roots in [[0, 0], [0, 2]] {
        for mode in [Mode::Affine, Mode::Projective] {
            let spec = ProblemSpec::new(0, mode, forms(roots))?;
            println!("cubes at {roots:?}, {mode:>10}: finite = {}", decide(&spec)?.finite);
        }
    }
    Ok(())
}
