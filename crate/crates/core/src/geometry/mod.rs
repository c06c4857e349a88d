//! Rational cone machinery for the characteristic points `(chi_i, n_i)`:
//! dual descriptions, face enumeration and admissible faces.
//!
//! A face is recorded as the set of point indices it contains. Coincident
//! points keep distinct indices and always land in the same faces.

mod fm;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{kernel_basis, primitive, rank_over_rationals, IntMatrix};

pub use fm::{find_point, Inequality};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(pub Vec<BigRational>);

impl RationalVector {
    pub fn from_integers(v: &[BigInt]) -> Self {
        RationalVector(v.iter().cloned().map(BigRational::from_integer).collect())
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RationalVector(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dot(&self, other: &[BigRational]) -> BigRational {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }

    pub fn dot_int(&self, other: &[BigInt]) -> BigRational {
        self.0.iter().zip(other).map(|(a, b)| a * BigRational::from_integer(b.clone())).sum()
    }

    /// Clears denominators and divides out the content. Positive scaling only.
    pub fn to_primitive_integers(&self) -> Vec<BigInt> {
        let lcm = self.0.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let scaled: Vec<BigInt> =
            self.0.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
        primitive(&scaled)
    }

    /// Entries as decimal strings (`"p"` or `"p/q"`).
    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(|x| x.to_string()).collect()
    }

    pub fn last(&self) -> Option<&BigRational> {
        self.0.last()
    }
}

impl fmt::Debug for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// A characteristic point `(chi, n)` of one summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoint {
    pub character: Vec<i64>,
    pub degree: u32,
    pub index: usize,
}

impl CharPoint {
    pub fn new(character: Vec<i64>, degree: u32, index: usize) -> Self {
        CharPoint { character, degree, index }
    }

    /// `(chi, n)`, or the homogenised `(1, chi, n)` when `lifted`.
    pub fn coords(&self, lifted: bool) -> Vec<BigInt> {
        let mut v = Vec::with_capacity(self.character.len() + 2);
        if lifted {
            v.push(BigInt::one());
        }
        v.extend(self.character.iter().map(|&c| BigInt::from(c)));
        v.push(BigInt::from(self.degree));
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    /// Sorted positions into the point list.
    pub indices: Vec<usize>,
    /// Admissible supporting normal (last coordinate negative), if known.
    pub normal: Option<RationalVector>,
    /// Dimension of the linear span of the face's points.
    pub dim: usize,
}

/// Dual description of a finitely generated cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCone {
    /// Extreme rays of the dual modulo lineality, as primitive integer
    /// vectors orthogonal to the lineality space, sorted lexicographically.
    pub normals: Vec<RationalVector>,
    /// Basis of the orthogonal complement of the generators' span.
    pub lineality: Vec<RationalVector>,
}

fn check_dims(points: &[CharPoint]) -> Result<usize> {
    let k = points.first().map_or(0, |p| p.character.len());
    for p in points {
        if p.character.len() != k {
            return Err(Error::DimensionMismatch { expected: k, found: p.character.len() });
        }
    }
    Ok(k)
}

fn point_coords(points: &[CharPoint], lifted: bool) -> Result<Vec<Vec<BigInt>>> {
    check_dims(points)?;
    Ok(points.iter().map(|p| p.coords(lifted)).collect())
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Facet normals and lineality of the dual of `cone(generators)`.
pub fn dual_cone(generators: &[RationalVector], dim: usize) -> Result<DualCone> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(generators.len());
    for g in generators {
        if g.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: g.len() });
        }
        rows.push(g.to_primitive_integers());
    }
    let (normals, lineality) = dual_of_integer_rows(&rows, dim);
    Ok(DualCone {
        normals: normals.iter().map(|n| RationalVector::from_integers(n)).collect(),
        lineality: lineality.iter().map(|n| RationalVector::from_integers(n)).collect(),
    })
}

fn dual_of_integer_rows(rows: &[Vec<BigInt>], dim: usize) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let gens = IntMatrix::from_rows(rows, dim).expect("rows checked by caller");
    let lineality = kernel_basis(&gens).vectors;
    let rank = dim - lineality.len();
    if rank == 0 {
        return (Vec::new(), lineality);
    }
    let distinct: Vec<Vec<BigInt>> =
        rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mut found: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for subset in combinations(distinct.len(), rank - 1) {
        let mut eqs: Vec<Vec<BigInt>> = subset.iter().map(|&i| distinct[i].clone()).collect();
        eqs.extend(lineality.iter().cloned());
        let m = IntMatrix::from_rows(&eqs, dim).expect("uniform width");
        let ker = kernel_basis(&m).vectors;
        if ker.len() != 1 {
            continue;
        }
        let v = &ker[0];
        let vals: Vec<BigInt> = distinct.iter().map(|g| dot(g, v)).collect();
        if vals.iter().all(|x| !x.is_negative()) {
            found.insert(primitive(v));
        } else if vals.iter().all(|x| !x.is_positive()) {
            found.insert(primitive(&v.iter().map(|x| -x).collect::<Vec<_>>()));
        }
    }
    (found.into_iter().collect(), lineality)
}

fn span_dim(coords: &[Vec<BigInt>], indices: &[usize], width: usize) -> usize {
    let rows: Vec<Vec<BigInt>> = indices.iter().map(|&i| coords[i].clone()).collect();
    rank_over_rationals(&IntMatrix::from_rows(&rows, width).expect("uniform width"))
}

fn faces_of_coords(coords: &[Vec<BigInt>], width: usize) -> Vec<Face> {
    let (normals, lineality) = dual_of_integer_rows(coords, width);
    let zero_set =
        |n: &Vec<BigInt>| -> BTreeSet<usize> { (0..coords.len()).filter(|&i| dot(&coords[i], n).is_zero()).collect() };
    let mut faces: BTreeSet<BTreeSet<usize>> = normals.iter().map(zero_set).collect();
    if !lineality.is_empty() {
        faces.insert((0..coords.len()).collect());
    }
    loop {
        let current: Vec<BTreeSet<usize>> = faces.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let meet: BTreeSet<usize> = a.intersection(b).copied().collect();
                grew |= faces.insert(meet);
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<Face> = faces
        .into_iter()
        .map(|s| {
            let indices: Vec<usize> = s.into_iter().collect();
            let dim = span_dim(coords, &indices, width);
            Face { indices, normal: None, dim }
        })
        .collect();
    out.sort_by(|a, b| a.indices.cmp(&b.indices));
    out
}

/// Every index set cut out by a nonzero supporting normal of the cone over
/// the points (`(1, chi, n)` when `lifted`), sorted by index set.
pub fn enumerate_faces(points: &[CharPoint], lifted: bool) -> Result<Vec<Face>> {
    if points.is_empty() {
        return Err(Error::InvalidInput("face enumeration needs at least one point".into()));
    }
    let coords = point_coords(points, lifted)?;
    let width = coords[0].len();
    Ok(faces_of_coords(&coords, width))
}

/// Finds integer `R` with `R[neg] <= -1`, `<P_i, R> = 0` on `subset` and
/// `<P_j, R> >= 1` elsewhere. Returned primitive.
fn face_lp(coords: &[Vec<BigInt>], width: usize, subset: &BTreeSet<usize>, neg: usize) -> Option<Vec<BigInt>> {
    let eq_rows: Vec<Vec<BigInt>> = subset.iter().map(|&i| coords[i].clone()).collect();
    let basis = kernel_basis(&IntMatrix::from_rows(&eq_rows, width).expect("uniform width")).vectors;
    if basis.is_empty() {
        return None;
    }
    let q = |x: BigInt| BigRational::from_integer(x);
    let mut system: Vec<Inequality> = (0..coords.len())
        .filter(|j| !subset.contains(j))
        .map(|j| Inequality::new(basis.iter().map(|b| q(dot(&coords[j], b))).collect(), BigRational::one()))
        .collect();
    system.push(Inequality::new(basis.iter().map(|b| q(-b[neg].clone())).collect(), BigRational::one()));
    let y = find_point(&system, basis.len())?;
    let r: Vec<BigRational> =
        (0..width).map(|c| basis.iter().zip(&y).map(|(b, yl)| yl * q(b[c].clone())).sum()).collect();
    Some(RationalVector(r).to_primitive_integers())
}

/// Supporting normal witnessing that `subset` is an admissible face, if any.
///
/// Affine points are `(chi, n)`; lifted points are `(1, chi, n)`, whose
/// admissible faces are the argmin sets of `<(chi, n), R'>` over the polytope.
pub fn admissible_normal(points: &[CharPoint], subset: &[usize], lifted: bool) -> Result<Option<RationalVector>> {
    let coords = point_coords(points, lifted)?;
    let set = subset_checked(subset, points.len())?;
    let Some(width) = coords.first().map(Vec::len) else {
        return Ok(None);
    };
    Ok(face_lp(&coords, width, &set, width - 1).map(|r| RationalVector::from_integers(&r)))
}

fn subset_checked(subset: &[usize], len: usize) -> Result<BTreeSet<usize>> {
    let set: BTreeSet<usize> = subset.iter().copied().collect();
    if let Some(&bad) = set.iter().find(|&&i| i >= len) {
        return Err(Error::InvalidInput(format!("face index {bad} out of range (have {len} points)")));
    }
    Ok(set)
}

fn inclusion_maximal(mut faces: Vec<Face>) -> Vec<Face> {
    let sets: Vec<BTreeSet<usize>> = faces.iter().map(|f| f.indices.iter().copied().collect()).collect();
    let keep: Vec<bool> = sets.iter().map(|s| !sets.iter().any(|t| t.len() > s.len() && s.is_subset(t))).collect();
    let mut it = keep.into_iter();
    faces.retain(|_| it.next().unwrap_or(false));
    faces.sort_by(|a, b| a.indices.cmp(&b.indices));
    faces
}

/// Inclusion-maximal admissible faces, each with a witness normal.
pub fn maximal_admissible_faces(points: &[CharPoint], lifted: bool) -> Result<Vec<Face>> {
    let candidates = enumerate_faces(points, lifted)?;
    let coords = point_coords(points, lifted)?;
    let width = coords[0].len();
    let admissible: Vec<Face> = candidates
        .into_iter()
        .filter_map(|mut f| {
            let set: BTreeSet<usize> = f.indices.iter().copied().collect();
            face_lp(&coords, width, &set, width - 1).map(|r| {
                f.normal = Some(RationalVector::from_integers(&r));
                f
            })
        })
        .collect();
    Ok(inclusion_maximal(admissible))
}

/// Admissible affine face of the polytope `conv(chi_i, n_i)` read directly:
/// `R = (r, p)` with `p <= -1` and an offset `m` such that `<P_i, R> = m` on
/// the subset and `<P_j, R> >= m + 1` off it. Returns `(R, m)`.
pub fn admissible_affine_normal(points: &[CharPoint], subset: &[usize]) -> Result<Option<(RationalVector, BigInt)>> {
    let set = subset_checked(subset, points.len())?;
    let coords = point_coords(points, false)?;
    Ok(affine_face_lp(&coords, &set))
}

fn affine_face_lp(coords: &[Vec<BigInt>], set: &BTreeSet<usize>) -> Option<(RationalVector, BigInt)> {
    let width = coords.first()?.len();
    // unknowns (R, m): <P, R> - m
    let with_offset: Vec<Vec<BigInt>> =
        coords.iter().map(|c| c.iter().cloned().chain(std::iter::once(-BigInt::one())).collect()).collect();
    let sol = face_lp(&with_offset, width + 1, set, width - 1)?;
    let offset = sol[width].clone();
    Some((RationalVector::from_integers(&sol[..width]), offset))
}

/// Maximal admissible affine faces of the polytope, found by testing each face
/// of the polytope with the offset formulation.
pub fn maximal_admissible_affine_faces(points: &[CharPoint]) -> Result<Vec<Face>> {
    if points.is_empty() {
        return Err(Error::InvalidInput("face enumeration needs at least one point".into()));
    }
    let coords = point_coords(points, false)?;
    let width = coords[0].len();
    // faces of conv(P) are the faces of the cone over {1} x P
    let lifted = point_coords(points, true)?;
    let admissible: Vec<Face> = faces_of_coords(&lifted, width + 1)
        .into_iter()
        .filter_map(|f| {
            let set: BTreeSet<usize> = f.indices.iter().copied().collect();
            affine_face_lp(&coords, &set).map(|(normal, _)| Face {
                dim: affine_dim(&coords, &f.indices),
                indices: f.indices,
                normal: Some(normal),
            })
        })
        .collect();
    Ok(inclusion_maximal(admissible))
}

fn affine_dim(coords: &[Vec<BigInt>], indices: &[usize]) -> usize {
    let Some(&base) = indices.first() else {
        return 0;
    };
    let width = coords[base].len();
    let diffs: Vec<Vec<BigInt>> =
        indices[1..].iter().map(|&i| coords[i].iter().zip(&coords[base]).map(|(a, b)| a - b).collect()).collect();
    rank_over_rationals(&IntMatrix::from_rows(&diffs, width).expect("uniform width"))
}
