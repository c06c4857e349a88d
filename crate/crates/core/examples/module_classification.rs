//! Whether every vector of a module has a finite orbit closure, and a
//! counterexample vector when not.

use orbclose::{decide, module_always_finite, witness_vector, ComponentSpec, Mode, ProblemSpec};

fn main() -> orbclose::Result<()> {
    // standard characters: each component has its own torus coordinate
    let standard = ProblemSpec::new(
        3,
        Mode::Projective,
        vec![
            ComponentSpec::new(vec![1, 0, 0], 2),
            ComponentSpec::new(vec![0, 1, 0], 3),
            ComponentSpec::new(vec![0, 0, 1], 1),
        ],
    )?;
    println!("standard characters: always finite = {}", module_always_finite(&standard)?.always_finite);

    // two points on one ray
    let collinear =
        ProblemSpec::new(1, Mode::Affine, vec![ComponentSpec::new(vec![1], 1), ComponentSpec::new(vec![2], 2)])?;
    let verdict = module_always_finite(&collinear)?;
    println!("(1,1), (2,2): always finite = {}", verdict.always_finite);
    if let Some((face, beta)) = verdict.witness {
        let bad = witness_vector(&collinear, &face.indices, &beta)?;
        let json = serde_json::to_string(&orbclose::io::problem_to_json(&bad)).expect("serialisable");
        println!("witness vector: {json}");
        println!("its closure is finite: {}", decide(&bad)?.finite);
    }
    Ok(())
}
