//! Limits along one-parameter curves in each of the seven cases.

use orbclose::oracle::{curve_limit, CurveSpec};
use orbclose::{ComponentSpec, GaussianRational, Mode, ProblemSpec};

fn show(spec: &ProblemSpec, curve: &CurveSpec) -> orbclose::Result<()> {
    let lim = curve_limit(spec, curve, spec.mode == Mode::Projective)?;
    print!("case {} {:<16} exponents {:?}", lim.case.number(), format!("{:?}", lim.case), lim.exponents);
    if lim.divergent {
        println!("  -> diverges");
        return Ok(());
    }
    let entries: Vec<String> = lim.entries.iter().map(|e| e.as_ref().map_or("0".into(), ToString::to_string)).collect();
    print!("  -> ({})", entries.join(", "));
    if let Some(r) = &lim.rescaling {
        print!("  up to ({})^(R/{})", r.base, r.denominator);
    }
    println!();
    Ok(())
}

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
    let curves = [
        CurveSpec::diagonal(vec![0], 0),
        CurveSpec::diagonal(vec![-1], 1),
        CurveSpec::diagonal(vec![1], -1),
        CurveSpec::translate(vec![-1], -1, g(2)),
        CurveSpec { r: vec![-1], p: -2, q: -2, c: g(-1), h: vec![g(-1), g(1)] },
        CurveSpec { r: vec![0], p: -1, q: -2, c: g(3), h: vec![g(-1)] },
        CurveSpec { r: vec![0], p: -2, q: 1, c: g(1), h: vec![g(-1)] },
    ];
    for curve in &curves {
        show(&spec, curve)?;
    }
    Ok(())
}
