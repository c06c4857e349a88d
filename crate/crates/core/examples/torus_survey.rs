//! Sample the standard vectors on each maximal admissible face and count
//! torus orbits among them; compare with the criterion.

use orbclose::oracle::{default_sample, sample_survey, standard_vector, Evidence};
use orbclose::{decide, ComponentSpec, GaussianRational, Mode, ProblemSpec};

fn main() -> orbclose::Result<()> {
    let g = GaussianRational::from;
    let spec = ProblemSpec::new(
        1,
        Mode::Projective,
        vec![
            ComponentSpec::new(vec![1], 1).with_root(g(0), 1),
            ComponentSpec::new(vec![1], 4).with_root(g(0), 2),
            ComponentSpec::new(vec![2], 4).with_root(g(-1), 2),
            ComponentSpec::new(vec![3], 3).with_root(g(-1), 1).with_root(g(0), 1),
            ComponentSpec::new(vec![4], 2),
        ],
    )?;
    let verdict = decide(&spec)?;
    for report in &verdict.reports {
        let face = &report.face.indices;
        let sample = default_sample(&spec, face, 8);
        let first = standard_vector(&spec, face, &sample[0])?;
        let values: Vec<String> = first.values.iter().map(ToString::to_string).collect();
        let survey = sample_survey(&spec, face, &sample)?;
        println!(
            "face {face:?}: v(1) = ({}), {} torus classes among {} samples -> {}",
            values.join(", "),
            survey.classes,
            survey.sample.len(),
            if survey.evidence == Evidence::Infinite { "infinite" } else { "finite" },
        );
    }
    println!("criterion: finite = {}", verdict.finite);
    Ok(())
}
