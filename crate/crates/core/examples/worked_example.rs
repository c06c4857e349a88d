//! A projective problem with infinitely many orbits in its closure.
//!
//! Five components of one torus factor; the face spanned by the last three
//! carries the kernel vector (1, -2, 1) and a root at 0 breaks it.

use orbclose::{decide_projective, modality, ComponentSpec, GaussianRational, Mode, ProblemSpec, Route};

fn main() -> orbclose::Result<()> {
    let zero = GaussianRational::zero();
    let minus_one = GaussianRational::from(-1);
    let spec = ProblemSpec::new(
        1,
        Mode::Projective,
        vec![
            ComponentSpec::new(vec![1], 1).with_root(zero.clone(), 1),
            ComponentSpec::new(vec![1], 4).with_root(zero.clone(), 2),
            ComponentSpec::new(vec![2], 4).with_root(minus_one.clone(), 2),
            ComponentSpec::new(vec![3], 3).with_root(minus_one, 1).with_root(zero, 1),
            ComponentSpec::new(vec![4], 2),
        ],
    )?;

    let lift = decide_projective(&spec, Route::Lift)?;
    let direct = decide_projective(&spec, Route::Direct)?;
    assert_eq!(lift.finite, direct.finite);

    for report in &lift.reports {
        let kernel: Vec<String> = report
            .kernel
            .vectors
            .iter()
            .map(|v| format!("{:?}", v.iter().map(ToString::to_string).collect::<Vec<_>>()))
            .collect();
        println!(
            "face {:?}  kernel {}  violated: {}",
            report.face.indices,
            kernel.join(" "),
            report.violation.is_some()
        );
    }
    if let Some(w) = &lift.witness {
        let beta: Vec<String> = w.beta.iter().map(ToString::to_string).collect();
        println!("witness: face {:?}, beta ({}), root {}, sum {}", w.face, beta.join(", "), w.root, w.value);
    }
    println!("finite: {}  modality: {}", lift.finite, modality(&spec)?);
    Ok(())
}
