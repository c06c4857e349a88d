//! Finiteness criterion for orbit closures.
//!
//! For every inclusion-maximal admissible face `I` and every integer `beta`
//! in the kernel of the face's character matrix (with an extra all-ones row
//! in the projective case), the sums `sum_{i in I} e_i(a) beta_i` must vanish
//! for all root values `a`. The condition is linear in `beta`, so checking a
//! lattice basis suffices.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gauss::GaussianRational;
use crate::geometry::{self, CharPoint, Face};
use crate::lattice::{kernel_basis, rank_over_rationals, IntMatrix, KernelBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Affine,
    Projective,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Affine => "affine",
            Mode::Projective => "projective",
        })
    }
}

/// How the projective criterion is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Homogenise to `(1, chi_i, n_i)` and run the affine machinery.
    Lift,
    /// Argmin faces of the polytope with an explicit `sum beta_i = 0` row.
    Direct,
}

/// One summand `V_{chi, n}` together with the root multiplicities of the
/// corresponding component `x^{n - e(inf)} prod (a x + y)^{e(a)}` of `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSpec {
    pub character: Vec<i64>,
    pub degree: u32,
    pub roots: BTreeMap<GaussianRational, u32>,
}

impl ComponentSpec {
    pub fn new(character: Vec<i64>, degree: u32) -> Self {
        ComponentSpec { character, degree, roots: BTreeMap::new() }
    }

    pub fn with_root(mut self, root: GaussianRational, mult: u32) -> Self {
        self.roots.insert(root, mult);
        self
    }

    /// `e(a)`, zero off the root support.
    pub fn multiplicity(&self, a: &GaussianRational) -> u32 {
        self.roots.get(a).copied().unwrap_or(0)
    }

    /// `e(inf)`: the number of finite roots counted with multiplicity.
    pub fn finite_root_count(&self) -> u64 {
        self.roots.values().map(|&m| u64::from(m)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProblemSpec {
    pub k: usize,
    pub mode: Mode,
    pub components: Vec<ComponentSpec>,
}

impl ProblemSpec {
    pub fn new(k: usize, mode: Mode, components: Vec<ComponentSpec>) -> Result<Self> {
        let spec = ProblemSpec { k, mode, components };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::InvalidInput("component list is empty".into()));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.character.len() != self.k {
                return Err(Error::InvalidInput(format!(
                    "component {i}: character has length {}, expected k = {}",
                    c.character.len(),
                    self.k
                )));
            }
            if let Some((a, _)) = c.roots.iter().find(|(_, &m)| m == 0) {
                return Err(Error::InvalidInput(format!("component {i}: root {a} has multiplicity 0")));
            }
            if c.finite_root_count() > u64::from(c.degree) {
                return Err(Error::InvalidInput(format!(
                    "component {i}: root multiplicities sum to {} > degree {}",
                    c.finite_root_count(),
                    c.degree
                )));
            }
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<CharPoint> {
        self.components.iter().enumerate().map(|(i, c)| CharPoint::new(c.character.clone(), c.degree, i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    /// Indexed like the face's `indices`.
    pub beta: Vec<BigInt>,
    pub root: GaussianRational,
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceReport {
    pub face: Face,
    pub kernel: KernelBasis,
    pub violation: Option<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Witness {
    pub face: Vec<usize>,
    pub beta: Vec<BigInt>,
    pub root: GaussianRational,
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub finite: bool,
    pub modality: u8,
    pub reports: Vec<FaceReport>,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn from_reports(mut reports: Vec<FaceReport>) -> Verdict {
        reports.sort_by(|a, b| a.face.indices.cmp(&b.face.indices));
        let witness = reports.iter().find_map(|r| {
            r.violation.as_ref().map(|v| Witness {
                face: r.face.indices.clone(),
                beta: v.beta.clone(),
                root: v.root.clone(),
                value: v.value.clone(),
            })
        });
        let finite = witness.is_none();
        Verdict { finite, modality: u8::from(!finite), reports, witness }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OnesRow {
    None,
    First,
    Last,
}

/// Integer matrix whose columns are the characters of the face, with the
/// all-ones row placed as requested.
fn character_matrix(spec: &ProblemSpec, indices: &[usize], ones: OnesRow) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(spec.k + 1);
    let ones_row = || vec![BigInt::one(); indices.len()];
    if ones == OnesRow::First {
        rows.push(ones_row());
    }
    for r in 0..spec.k {
        rows.push(indices.iter().map(|&i| BigInt::from(spec.components[i].character[r])).collect());
    }
    if ones == OnesRow::Last {
        rows.push(ones_row());
    }
    IntMatrix::from_rows(&rows, indices.len()).expect("uniform width")
}

fn check_face(spec: &ProblemSpec, face: Face, ones: OnesRow) -> FaceReport {
    let kernel = kernel_basis(&character_matrix(spec, &face.indices, ones));
    let roots: BTreeSet<&GaussianRational> =
        face.indices.iter().flat_map(|&i| spec.components[i].roots.keys()).collect();
    let violation = kernel.vectors.iter().find_map(|beta| {
        roots.iter().find_map(|&a| {
            let value: BigInt =
                face.indices.iter().zip(beta).map(|(&i, b)| b * BigInt::from(spec.components[i].multiplicity(a))).sum();
            (!value.is_zero()).then(|| Violation { beta: beta.clone(), root: a.clone(), value })
        })
    });
    FaceReport { face, kernel, violation }
}

fn ones_for(mode: Mode) -> OnesRow {
    match mode {
        Mode::Affine => OnesRow::None,
        Mode::Projective => OnesRow::First,
    }
}

/// Checks the vanishing condition on one face (indices into the components).
pub fn face_condition(spec: &ProblemSpec, indices: &[usize]) -> Result<FaceReport> {
    if indices.is_empty() {
        return Err(Error::Precondition("face must be nonempty".into()));
    }
    let set: BTreeSet<usize> = indices.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&i| i >= spec.components.len()) {
        return Err(Error::InvalidInput(format!("face index {bad} out of range")));
    }
    let indices: Vec<usize> = set.into_iter().collect();
    let lifted = spec.mode == Mode::Projective;
    let coords: Vec<Vec<BigInt>> = indices.iter().map(|&i| spec.points()[i].coords(lifted)).collect();
    let width = spec.k + 1 + usize::from(lifted);
    let dim = rank_over_rationals(&IntMatrix::from_rows(&coords, width)?);
    Ok(check_face(spec, Face { indices, normal: None, dim }, ones_for(spec.mode)))
}

/// Affine criterion on the cone spanned by the characteristic points.
pub fn decide_affine(spec: &ProblemSpec) -> Result<Verdict> {
    if spec.mode != Mode::Affine {
        return Err(Error::Precondition("decide_affine needs an affine problem".into()));
    }
    spec.validate()?;
    let faces = geometry::maximal_admissible_faces(&spec.points(), false)?;
    let reports = faces.into_iter().map(|f| check_face(spec, f, OnesRow::None)).collect();
    Ok(Verdict::from_reports(reports))
}

/// Projective criterion on the polytope of characteristic points.
pub fn decide_projective(spec: &ProblemSpec, route: Route) -> Result<Verdict> {
    if spec.mode != Mode::Projective {
        return Err(Error::Precondition("decide_projective needs a projective problem".into()));
    }
    spec.validate()?;
    let points = spec.points();
    let reports = match route {
        Route::Lift => geometry::maximal_admissible_faces(&points, true)?
            .into_iter()
            .map(|f| check_face(spec, f, OnesRow::First))
            .collect(),
        Route::Direct => geometry::maximal_admissible_affine_faces(&points)?
            .into_iter()
            .map(|f| check_face(spec, f, OnesRow::Last))
            .collect(),
    };
    Ok(Verdict::from_reports(reports))
}

/// Decides according to the problem's mode (lift route when projective).
pub fn decide(spec: &ProblemSpec) -> Result<Verdict> {
    match spec.mode {
        Mode::Affine => decide_affine(spec),
        Mode::Projective => decide_projective(spec, Route::Lift),
    }
}

/// Modality of the orbit closure: 0 when finite, 1 otherwise.
pub fn modality(spec: &ProblemSpec) -> Result<u8> {
    Ok(decide(spec)?.modality)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleVerdict {
    pub always_finite: bool,
    /// A maximal admissible face whose characters (over `n_i != 0`) are
    /// dependent, with a dependency indexed like the face's `indices`.
    pub witness: Option<(Face, Vec<BigInt>)>,
}

/// Whether every orbit closure in the module has finitely many orbits.
/// Root data in `spec` is ignored.
pub fn module_always_finite(spec: &ProblemSpec) -> Result<ModuleVerdict> {
    spec.validate()?;
    let lifted = spec.mode == Mode::Projective;
    let faces = geometry::maximal_admissible_faces(&spec.points(), lifted)?;
    for face in faces {
        let positive: Vec<usize> = face.indices.iter().copied().filter(|&i| spec.components[i].degree != 0).collect();
        let kernel = kernel_basis(&character_matrix(spec, &positive, ones_for(spec.mode)));
        if let Some(dep) = kernel.vectors.first() {
            let beta: Vec<BigInt> = face
                .indices
                .iter()
                .map(|i| positive.iter().position(|p| p == i).map_or_else(BigInt::zero, |pos| dep[pos].clone()))
                .collect();
            return Ok(ModuleVerdict { always_finite: false, witness: Some((face, beta)) });
        }
    }
    Ok(ModuleVerdict { always_finite: true, witness: None })
}

/// Builds a vector in the module with infinitely many orbits in its closure:
/// every component is `x^{n_i}` except one `j` with `beta_j != 0, n_j >= 1`,
/// which gets a simple root at `0`.
pub fn witness_vector(spec: &ProblemSpec, face: &[usize], beta: &[BigInt]) -> Result<ProblemSpec> {
    witness_vector_at(spec, face, beta, None)
}

/// Like [`witness_vector`], with the rooted component `j` chosen by the
/// caller (a component index inside `face`).
pub fn witness_vector_at(
    spec: &ProblemSpec,
    face: &[usize],
    beta: &[BigInt],
    at: Option<usize>,
) -> Result<ProblemSpec> {
    spec.validate()?;
    if face.len() != beta.len() {
        return Err(Error::DimensionMismatch { expected: face.len(), found: beta.len() });
    }
    if beta.iter().all(|b| b.is_zero()) {
        return Err(Error::WitnessImpossible("beta is zero".into()));
    }
    if face.iter().any(|&i| i >= spec.components.len()) {
        return Err(Error::InvalidInput("face index out of range".into()));
    }
    let lifted = spec.mode == Mode::Projective;
    if geometry::admissible_normal(&spec.points(), face, lifted)?.is_none() {
        return Err(Error::Precondition(format!("face {face:?} is not admissible")));
    }
    let m = character_matrix(spec, face, ones_for(spec.mode));
    if m.mul_vec(beta).iter().any(|x| !x.is_zero()) {
        return Err(Error::Precondition("beta does not annihilate the face's characters".into()));
    }
    let Some(j) = face
        .iter()
        .zip(beta)
        .find(|(&i, b)| at.is_none_or(|j| j == i) && !b.is_zero() && spec.components[i].degree >= 1)
        .map(|(&i, _)| i)
    else {
        return Err(Error::WitnessImpossible("no index with beta_j != 0 and n_j >= 1".into()));
    };
    let components = spec
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let fresh = ComponentSpec::new(c.character.clone(), c.degree);
            if i == j {
                fresh.with_root(GaussianRational::zero(), 1)
            } else {
                fresh
            }
        })
        .collect();
    ProblemSpec::new(spec.k, spec.mode, components)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from(n)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// v = (y, x^2y^2, x^2(y-x)^2, xy(y-x), x^2) in V_{1,1}+V_{1,4}+V_{2,4}+V_{3,3}+V_{4,2}
    fn worked_example(mode: Mode) -> ProblemSpec {
        ProblemSpec::new(
            1,
            mode,
            vec![
                ComponentSpec::new(vec![1], 1).with_root(g(0), 1),
                ComponentSpec::new(vec![1], 4).with_root(g(0), 2),
                ComponentSpec::new(vec![2], 4).with_root(g(-1), 2),
                ComponentSpec::new(vec![3], 3).with_root(g(0), 1).with_root(g(-1), 1),
                ComponentSpec::new(vec![4], 2),
            ],
        )
        .unwrap()
    }

    fn pair_on_ray(mode: Mode) -> ProblemSpec {
        ProblemSpec::new(
            1,
            mode,
            vec![ComponentSpec::new(vec![1], 1).with_root(g(0), 1), ComponentSpec::new(vec![2], 2).with_root(g(1), 2)],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_face_cde_violates_at_zero() {
        let r = face_condition(&worked_example(Mode::Projective), &[2, 3, 4]).unwrap();
        let v = r.violation.unwrap();
        assert_eq!(v.beta, big(&[1, -2, 1]));
        assert_eq!(v.root, g(0));
        assert_eq!(v.value, BigInt::from(-2));
    }

    #[test]
    fn worked_example_face_bc_passes() {
        let r = face_condition(&worked_example(Mode::Projective), &[1, 2]).unwrap();
        assert!(r.kernel.is_trivial());
        assert!(r.violation.is_none());
    }

    #[test]
    fn identical_root_maps_pass() {
        let spec = ProblemSpec::new(
            0,
            Mode::Projective,
            vec![ComponentSpec::new(vec![], 3).with_root(g(2), 1), ComponentSpec::new(vec![], 3).with_root(g(2), 1)],
        )
        .unwrap();
        let r = face_condition(&spec, &[0, 1]).unwrap();
        assert_eq!(r.kernel.len(), 1);
        assert!(r.violation.is_none());
    }

    #[test]
    fn face_condition_rejects_bad_faces() {
        let spec = worked_example(Mode::Projective);
        assert!(matches!(face_condition(&spec, &[]), Err(Error::Precondition(_))));
        assert!(face_condition(&spec, &[9]).is_err());
    }

    #[test]
    fn worked_example_is_infinite() {
        for route in [Route::Lift, Route::Direct] {
            let v = decide_projective(&worked_example(Mode::Projective), route).unwrap();
            assert!(!v.finite);
            assert_eq!(v.modality, 1);
            let w = v.witness.unwrap();
            assert_eq!(w.face, vec![2, 3, 4]);
            assert_eq!(w.beta, big(&[1, -2, 1]));
            assert_eq!(w.root, g(0));
            assert_eq!(w.value, BigInt::from(-2));
        }
    }

    #[test]
    fn worked_example_affine_is_finite() {
        let v = decide_affine(&worked_example(Mode::Affine)).unwrap();
        assert!(v.finite);
        assert_eq!(v.reports.len(), 1);
        assert_eq!(v.reports[0].face.indices, vec![1]);
    }

    #[test]
    fn k0_affine_is_finite() {
        let spec = ProblemSpec::new(
            0,
            Mode::Affine,
            vec![ComponentSpec::new(vec![], 3).with_root(g(0), 2), ComponentSpec::new(vec![], 3)],
        )
        .unwrap();
        assert!(decide_affine(&spec).unwrap().finite);
        assert_eq!(modality(&spec).unwrap(), 0);
    }

    #[test]
    fn collinear_pair_is_infinite_affinely() {
        let v = decide_affine(&pair_on_ray(Mode::Affine)).unwrap();
        assert!(!v.finite);
        let w = v.witness.unwrap();
        assert_eq!(w.face, vec![0, 1]);
        assert_eq!(w.beta, big(&[2, -1]));
        assert_eq!(w.root, g(0));
        assert_eq!(w.value, BigInt::from(2));
    }

    #[test]
    fn sl2_projective_max_degree_rule() {
        // (xy^2, x^2 y): both of degree 3, different roots
        let bad = ProblemSpec::new(
            0,
            Mode::Projective,
            vec![ComponentSpec::new(vec![], 3).with_root(g(0), 2), ComponentSpec::new(vec![], 3).with_root(g(0), 1)],
        )
        .unwrap();
        let v = decide_projective(&bad, Route::Lift).unwrap();
        assert!(!v.finite);
        assert_eq!(v.witness.as_ref().unwrap().face, vec![0, 1]);
        assert_eq!(num_traits::Signed::abs(&v.witness.unwrap().value), BigInt::one());
        // (xy^2, xy): unique top degree
        let good = ProblemSpec::new(
            0,
            Mode::Projective,
            vec![ComponentSpec::new(vec![], 3).with_root(g(0), 2), ComponentSpec::new(vec![], 2).with_root(g(0), 1)],
        )
        .unwrap();
        let v = decide_projective(&good, Route::Lift).unwrap();
        assert!(v.finite);
        assert_eq!(v.reports.len(), 1);
        assert_eq!(v.reports[0].face.indices, vec![0]);
    }

    #[test]
    fn single_component_has_modality_zero() {
        for mode in [Mode::Affine, Mode::Projective] {
            let spec = ProblemSpec::new(2, mode, vec![ComponentSpec::new(vec![1, -3], 5).with_root(g(1), 3)]).unwrap();
            assert_eq!(modality(&spec).unwrap(), 0);
        }
    }

    #[test]
    fn mode_preconditions() {
        assert!(decide_affine(&worked_example(Mode::Projective)).is_err());
        assert!(decide_projective(&worked_example(Mode::Affine), Route::Lift).is_err());
    }

    #[test]
    fn validation_errors() {
        assert!(ProblemSpec::new(1, Mode::Affine, vec![]).is_err());
        assert!(ProblemSpec::new(1, Mode::Affine, vec![ComponentSpec::new(vec![1, 2], 1)]).is_err());
        let too_many = ComponentSpec::new(vec![1], 2).with_root(g(0), 2).with_root(g(1), 1);
        assert!(ProblemSpec::new(1, Mode::Affine, vec![too_many]).is_err());
    }

    #[test]
    fn module_classification() {
        let m = module_always_finite(&pair_on_ray(Mode::Affine)).unwrap();
        assert!(!m.always_finite);
        let (face, beta) = m.witness.unwrap();
        assert_eq!(face.indices, vec![0, 1]);
        assert_eq!(beta, big(&[2, -1]));

        let zero_degrees =
            ProblemSpec::new(1, Mode::Affine, vec![ComponentSpec::new(vec![0], 0), ComponentSpec::new(vec![0], 0)])
                .unwrap();
        assert!(module_always_finite(&zero_degrees).unwrap().always_finite);

        let standard_module = ProblemSpec::new(
            3,
            Mode::Projective,
            vec![
                ComponentSpec::new(vec![1, 0, 0], 2),
                ComponentSpec::new(vec![0, 1, 0], 5),
                ComponentSpec::new(vec![0, 0, 1], 1),
            ],
        )
        .unwrap();
        assert!(module_always_finite(&standard_module).unwrap().always_finite);
    }

    #[test]
    fn witness_vectors() {
        let spec = pair_on_ray(Mode::Affine);
        let w = witness_vector(&spec, &[0, 1], &big(&[2, -1])).unwrap();
        assert_eq!(w.components[0].multiplicity(&g(0)), 1);
        assert!(w.components[1].roots.is_empty());
        assert!(!decide_affine(&w).unwrap().finite);

        let ex = worked_example(Mode::Projective);
        let w = witness_vector(&ex, &[2, 3, 4], &big(&[1, -2, 1])).unwrap();
        assert_eq!(w.components[2].multiplicity(&g(0)), 1);
        let v = decide(&w).unwrap();
        assert!(!v.finite);
        let report = v.reports.iter().find(|r| r.face.indices == vec![2, 3, 4]).unwrap();
        assert_eq!(report.violation.as_ref().unwrap().value, BigInt::one());

        let at_d = witness_vector_at(&ex, &[2, 3, 4], &big(&[1, -2, 1]), Some(3)).unwrap();
        assert_eq!(at_d.components[3].multiplicity(&g(0)), 1);
        assert!(at_d.components[2].roots.is_empty());
        let v = decide(&at_d).unwrap();
        assert_eq!(v.witness.unwrap().value, BigInt::from(-2));
        assert!(witness_vector_at(&ex, &[2, 3, 4], &big(&[1, -2, 1]), Some(0)).is_err());

        assert!(matches!(witness_vector(&spec, &[0, 1], &big(&[0, 0])), Err(Error::WitnessImpossible(_))));
        assert!(matches!(witness_vector(&spec, &[0, 1], &big(&[1, 1])), Err(Error::Precondition(_))));
    }

    #[test]
    fn witness_needs_positive_degree() {
        let spec =
            ProblemSpec::new(1, Mode::Affine, vec![ComponentSpec::new(vec![0], 0), ComponentSpec::new(vec![0], 0)])
                .unwrap();
        assert!(matches!(witness_vector(&spec, &[0, 1], &big(&[1, -1])), Err(Error::WitnessImpossible(_))));
    }
}
