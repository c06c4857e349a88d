//! Independent evidence for the criterion: limits along normal-form curves in
//! the Borel subgroup, standard vectors `v(d, R)`, torus-orbit comparison of
//! nonvanishing tuples and a sampling survey along the `d`-line.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::criterion::{ComponentSpec, Mode, ProblemSpec};
use crate::error::{Error, Result};
use crate::gauss::GaussianRational;
use crate::geometry::{self, CharPoint};
use crate::lattice::{kernel_basis, IntMatrix};

/// Binary form of degree `n`; `coeffs[j]` multiplies `x^{n-j} y^j`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    pub coeffs: Vec<GaussianRational>,
}

impl BinaryForm {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn monomial(coefficient: GaussianRational, x_exp: usize, y_exp: usize) -> Self {
        let mut coeffs = vec![GaussianRational::zero(); x_exp + y_exp + 1];
        coeffs[y_exp] = coefficient;
        BinaryForm { coeffs }
    }

    /// `x^{n - e(inf)} prod (a x + y)^{e(a)}`.
    pub fn from_component(c: &ComponentSpec) -> Self {
        let free = c.degree as usize - c.finite_root_count() as usize;
        let mut form = BinaryForm::monomial(GaussianRational::one(), free, 0);
        for (a, &m) in &c.roots {
            let linear = BinaryForm { coeffs: vec![a.clone(), GaussianRational::one()] };
            for _ in 0..m {
                form = form.mul(&linear);
            }
        }
        form
    }

    pub fn mul(&self, other: &BinaryForm) -> BinaryForm {
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        BinaryForm { coeffs }
    }

    pub fn scale(&self, s: &GaussianRational) -> BinaryForm {
        BinaryForm { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    /// Nonzero terms as `(coefficient, x exponent, y exponent)`.
    pub fn terms(&self) -> Vec<(GaussianRational, usize, usize)> {
        let n = self.degree();
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(j, c)| (c.clone(), n - j, j)).collect()
    }

    pub fn as_monomial(&self) -> Option<(GaussianRational, usize, usize)> {
        let mut t = self.terms();
        (t.len() == 1).then(|| t.remove(0))
    }
}

impl fmt::Display for BinaryForm {
    /// `4x^4 - 2x^3y + (1+i)y^2`; `0` for the zero form.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, x, y)) in terms.iter().enumerate() {
            let mut coeff = c.to_string();
            let negative = c.im.is_zero() && c.re.is_negative();
            if k > 0 {
                f.write_str(if negative { " - " } else { " + " })?;
                if negative {
                    coeff = (-c).to_string();
                }
            }
            let vars = match (x, y) {
                (0, 0) => String::new(),
                _ => [("x", *x), ("y", *y)]
                    .iter()
                    .filter(|(_, e)| *e > 0)
                    .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
                    .collect(),
            };
            let complex = !c.im.is_zero();
            match coeff.as_str() {
                "1" if !vars.is_empty() => {}
                "-1" if !vars.is_empty() => f.write_str("-")?,
                _ if complex => write!(f, "({coeff})")?,
                _ => f.write_str(&coeff)?,
            }
            f.write_str(&vars)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().iter().map(|(c, x, y)| format!("({c})x^{x}y^{y}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `(t^{r_1}, ..., t^{r_k}, [[t^p, c h(t) t^q], [0, t^{-p}]])` with
/// `h = h[0] + h[1] t + ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSpec {
    pub r: Vec<i64>,
    pub p: i64,
    pub q: i64,
    pub c: GaussianRational,
    pub h: Vec<GaussianRational>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveCase {
    /// `p = 0, c = 0`
    Torus,
    /// `p > 0, c = 0`
    PositiveDiagonal,
    /// `p < 0, c = 0`
    NegativeDiagonal,
    /// `p = q, h = -1`
    Translate,
    /// `p = q, h != -1`
    TranslateHigher,
    /// `p > q, c != 0`
    SteepShear,
    /// `p < q, c != 0`
    ShallowShear,
}

impl CurveCase {
    /// Position in the usual enumeration of the seven limit cases (1-based).
    pub fn number(self) -> u8 {
        self as u8 + 1
    }
}

impl CurveSpec {
    pub fn diagonal(r: Vec<i64>, p: i64) -> Self {
        CurveSpec { r, p, q: 0, c: GaussianRational::zero(), h: Vec::new() }
    }

    /// `h = -1`, `q = p`: the translation curve through `c`.
    pub fn translate(r: Vec<i64>, p: i64, c: GaussianRational) -> Self {
        CurveSpec { r, p, q: p, c, h: vec![-GaussianRational::one()] }
    }

    fn h_degree(&self) -> Option<usize> {
        self.h.iter().rposition(|x| !x.is_zero())
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if self.r.len() != k {
            return Err(Error::InvalidInput(format!("curve has {} torus exponents, expected {k}", self.r.len())));
        }
        if self.c.is_zero() {
            return Ok(());
        }
        if self.q >= -self.p {
            return Err(Error::InvalidInput(format!(
                "curve not in normal form: c != 0 requires q < -p (p = {}, q = {})",
                self.p, self.q
            )));
        }
        if self.h.first() != Some(&-GaussianRational::one()) {
            return Err(Error::InvalidInput("curve not in normal form: h(0) must be -1".into()));
        }
        let deg = self.h_degree().unwrap_or(0) as i64;
        if deg >= -self.p - self.q {
            return Err(Error::InvalidInput(format!(
                "curve not in normal form: deg h = {deg} must be < -p-q = {}",
                -self.p - self.q
            )));
        }
        Ok(())
    }

    pub fn classify(&self) -> CurveCase {
        use std::cmp::Ordering::*;
        if self.c.is_zero() {
            return match self.p.cmp(&0) {
                Equal => CurveCase::Torus,
                Greater => CurveCase::PositiveDiagonal,
                Less => CurveCase::NegativeDiagonal,
            };
        }
        match self.p.cmp(&self.q) {
            Equal if self.h_degree() == Some(0) => CurveCase::Translate,
            Equal => CurveCase::TranslateHigher,
            Greater => CurveCase::SteepShear,
            Less => CurveCase::ShallowShear,
        }
    }

    /// `<(chi, n), (r, p)>`
    pub fn pairing(&self, c: &ComponentSpec) -> i64 {
        c.character.iter().zip(&self.r).map(|(a, b)| a * b).sum::<i64>() + self.p * i64::from(c.degree)
    }

    /// Lowest `l >= 1` with `h_l != 0` (only meaningful when `h != -1`).
    fn first_correction(&self) -> Option<(usize, &GaussianRational)> {
        self.h.iter().enumerate().skip(1).find(|(_, x)| !x.is_zero())
    }
}

/// Torus element `base^{R / denominator}` that normalises the limit in the
/// cases whose limit carries powers of `c h_l` or `-c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rescaling {
    pub base: GaussianRational,
    pub denominator: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitVector {
    pub case: CurveCase,
    /// Leading `t`-exponent of each component along the curve.
    pub exponents: Vec<i64>,
    /// Exponent subtracted before taking the limit (the minimum in projective
    /// mode, zero in affine mode).
    pub shift: i64,
    /// `None` for components that tend to zero. Empty when divergent.
    pub entries: Vec<Option<BinaryForm>>,
    pub divergent: bool,
    pub rescaling: Option<Rescaling>,
}

fn prod_shifted(c: &ComponentSpec, center: &GaussianRational) -> GaussianRational {
    c.roots.iter().filter(|(a, _)| *a != center).fold(GaussianRational::one(), |acc, (a, &m)| {
        &acc * &(a - center).pow(i64::from(m)).expect("nonnegative power")
    })
}

fn pow(base: &GaussianRational, e: u32) -> GaussianRational {
    base.pow(i64::from(e)).expect("nonnegative power")
}

/// Leading exponent and leading form of one component along the curve.
fn component_limit(c: &ComponentSpec, curve: &CurveSpec, case: CurveCase) -> (i64, BinaryForm) {
    let n = c.degree as usize;
    let pair = curve.pairing(c);
    let (p, q) = (curve.p, curve.q);
    let zero = GaussianRational::zero();
    let e_inf = c.finite_root_count() as i64;
    match case {
        CurveCase::Torus => (pair, BinaryForm::from_component(c)),
        CurveCase::PositiveDiagonal => {
            let e = e_inf as usize;
            (pair - 2 * p * e_inf, BinaryForm::monomial(GaussianRational::one(), n - e, e))
        }
        CurveCase::NegativeDiagonal => {
            let e0 = c.multiplicity(&zero);
            (pair - 2 * p * i64::from(e0), BinaryForm::monomial(prod_shifted(c, &zero), n - e0 as usize, e0 as usize))
        }
        CurveCase::Translate => {
            let ec = c.multiplicity(&curve.c);
            (
                pair - 2 * p * i64::from(ec),
                BinaryForm::monomial(prod_shifted(c, &curve.c), n - ec as usize, ec as usize),
            )
        }
        CurveCase::TranslateHigher => {
            let ec = c.multiplicity(&curve.c);
            let (l, hl) = curve.first_correction().expect("h differs from -1");
            let coeff = &pow(&(&curve.c * hl), ec) * &prod_shifted(c, &curve.c);
            (pair + l as i64 * i64::from(ec), BinaryForm::monomial(coeff, n, 0))
        }
        CurveCase::SteepShear => {
            let coeff = pow(&-&curve.c, e_inf as u32);
            (pair + (q - p) * e_inf, BinaryForm::monomial(coeff, n, 0))
        }
        CurveCase::ShallowShear => {
            let e0 = c.multiplicity(&zero);
            let coeff = &pow(&-&curve.c, e0) * &prod_shifted(c, &zero);
            (pair + (q - p) * i64::from(e0), BinaryForm::monomial(coeff, n, 0))
        }
    }
}

/// `lim_{t -> 0} gamma(t) v` (or of the line `<v>` when `projective`).
pub fn curve_limit(spec: &ProblemSpec, curve: &CurveSpec, projective: bool) -> Result<LimitVector> {
    spec.validate()?;
    curve.validate(spec.k)?;
    let case = curve.classify();
    let (exponents, forms): (Vec<i64>, Vec<BinaryForm>) =
        spec.components.iter().map(|c| component_limit(c, curve, case)).unzip();
    let rescaling = match case {
        CurveCase::TranslateHigher => {
            curve.first_correction().map(|(l, hl)| Rescaling { base: &curve.c * hl, denominator: l as i64 })
        }
        CurveCase::SteepShear | CurveCase::ShallowShear => {
            Some(Rescaling { base: -&curve.c, denominator: curve.q - curve.p })
        }
        _ => None,
    };
    let shift = if projective { exponents.iter().copied().min().unwrap_or(0) } else { 0 };
    let divergent = exponents.iter().any(|&e| e < shift);
    let entries = if divergent {
        Vec::new()
    } else {
        exponents.iter().zip(forms).map(|(&e, f)| (e == shift).then_some(f)).collect()
    };
    Ok(LimitVector { case, exponents, shift, entries, divergent, rescaling })
}

/// `v(d, R)` restricted to a face: the values `p_i(d) = prod_a (a - d)^{e_i(a)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardVector {
    pub face: Vec<usize>,
    pub d: GaussianRational,
    pub values: Vec<GaussianRational>,
}

pub fn standard_vector(spec: &ProblemSpec, face: &[usize], d: &GaussianRational) -> Result<StandardVector> {
    let mut values = Vec::with_capacity(face.len());
    for &i in face {
        let c = spec.components.get(i).ok_or_else(|| Error::InvalidInput(format!("face index {i} out of range")))?;
        if c.multiplicity(d) != 0 {
            return Err(Error::Precondition(format!("{d} is a root of component {i}")));
        }
        values.push(prod_shifted(c, d));
    }
    Ok(StandardVector { face: face.to_vec(), d: d.clone(), values })
}

fn monomial_value(x: &[GaussianRational], beta: &[BigInt], sign_positive: bool) -> GaussianRational {
    x.iter().zip(beta).fold(GaussianRational::one(), |acc, (xi, b)| {
        if (sign_positive && b.is_positive()) || (!sign_positive && b.is_negative()) {
            let e = b.abs().to_i64().expect("kernel entry fits in i64");
            &acc * &xi.pow(e).expect("nonnegative power")
        } else {
            acc
        }
    })
}

/// Whether the torus acting through the columns of `characters` maps `x`
/// to `y`: `prod x_i^{beta_i} = prod y_i^{beta_i}` over the kernel lattice.
/// `homogenize` adds the all-ones row (scalars act too).
pub fn torus_equivalent(
    x: &[GaussianRational],
    y: &[GaussianRational],
    characters: &IntMatrix,
    homogenize: bool,
) -> Result<bool> {
    if x.len() != characters.cols() || y.len() != characters.cols() {
        return Err(Error::DimensionMismatch { expected: characters.cols(), found: x.len().max(y.len()) });
    }
    if x.iter().chain(y).any(GaussianRational::is_zero) {
        return Err(Error::InvalidInput("torus comparison needs nonvanishing coordinates".into()));
    }
    let matrix = if homogenize {
        let mut rows = vec![vec![BigInt::one(); characters.cols()]];
        rows.extend((0..characters.rows()).map(|r| characters.row(r).to_vec()));
        IntMatrix::from_rows(&rows, characters.cols())?
    } else {
        characters.clone()
    };
    // x^{b+} y^{b-} == y^{b+} x^{b-} avoids division
    Ok(kernel_basis(&matrix).vectors.iter().all(|beta| {
        let lhs = &monomial_value(x, beta, true) * &monomial_value(y, beta, false);
        let rhs = &monomial_value(y, beta, true) * &monomial_value(x, beta, false);
        lhs == rhs
    }))
}

/// Columns `chi_i` for the face's components (k rows).
pub fn face_characters(spec: &ProblemSpec, face: &[usize]) -> IntMatrix {
    let rows: Vec<Vec<BigInt>> =
        (0..spec.k).map(|r| face.iter().map(|&i| BigInt::from(spec.components[i].character[r])).collect()).collect();
    IntMatrix::from_rows(&rows, face.len()).expect("uniform width")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    Finite,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Survey {
    pub evidence: Evidence,
    pub classes: usize,
    pub sample: Vec<GaussianRational>,
}

/// The first `size` positive integers that are not roots of any face component.
pub fn default_sample(spec: &ProblemSpec, face: &[usize], size: usize) -> Vec<GaussianRational> {
    let roots: BTreeSet<&GaussianRational> =
        face.iter().filter_map(|&i| spec.components.get(i)).flat_map(|c| c.roots.keys()).collect();
    (1i64..).map(GaussianRational::from).filter(|d| !roots.contains(d)).take(size).collect()
}

/// Partitions the standard vectors `v(d, R)`, `d` in `sample`, into torus
/// classes. Two or more classes along the line is evidence of infinitely many
/// orbits.
pub fn sample_survey(spec: &ProblemSpec, face: &[usize], sample: &[GaussianRational]) -> Result<Survey> {
    let distinct: BTreeSet<&GaussianRational> = sample.iter().collect();
    if distinct.len() != sample.len() {
        return Err(Error::InvalidInput("sample values must be pairwise distinct".into()));
    }
    let vectors = sample
        .iter()
        .map(|d| standard_vector(spec, face, d))
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::InvalidInput(format!("bad sample: {e}")))?;
    let characters = face_characters(spec, face);
    let homogenize = spec.mode == Mode::Projective;
    let mut reps: Vec<&StandardVector> = Vec::new();
    for v in &vectors {
        let mut known = false;
        for r in &reps {
            if torus_equivalent(&r.values, &v.values, &characters, homogenize)? {
                known = true;
                break;
            }
        }
        if !known {
            reps.push(v);
        }
    }
    let classes = reps.len();
    let evidence = if classes >= 2 { Evidence::Infinite } else { Evidence::Finite };
    Ok(Survey { evidence, classes, sample: sample.to_vec() })
}

pub const BRUTE_FORCE_LIMIT: usize = 12;

/// Inclusion-maximal subsets passing the admissibility LP, found by trying
/// all `2^s` subsets.
pub fn brute_force_admissible(points: &[CharPoint], lifted: bool) -> Result<Vec<Vec<usize>>> {
    if points.len() > BRUTE_FORCE_LIMIT {
        return Err(Error::TooManyPoints { count: points.len(), limit: BRUTE_FORCE_LIMIT });
    }
    let s = points.len();
    let mut feasible: Vec<BTreeSet<usize>> = Vec::new();
    for mask in 0u32..(1u32 << s) {
        let subset: Vec<usize> = (0..s).filter(|i| mask >> i & 1 == 1).collect();
        if geometry::admissible_normal(points, &subset, lifted)?.is_some() {
            feasible.push(subset.into_iter().collect());
        }
    }
    let mut out: Vec<Vec<usize>> = feasible
        .iter()
        .filter(|a| !feasible.iter().any(|b| b.len() > a.len() && a.is_subset(b)))
        .map(|a| a.iter().copied().collect())
        .collect();
    out.sort();
    Ok(out)
}
