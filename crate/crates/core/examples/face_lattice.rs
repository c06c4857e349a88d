//! Faces of a cone of characteristic points, and which of them admit a
//! normal with negative degree coordinate.

use orbclose::geometry::{dual_cone, enumerate_faces, maximal_admissible_faces};
use orbclose::{CharPoint, RationalVector};

fn main() -> orbclose::Result<()> {
    let points: Vec<CharPoint> = [(1, 1), (1, 4), (2, 4), (3, 3), (4, 2)]
        .iter()
        .enumerate()
        .map(|(i, &(chi, n))| CharPoint::new(vec![chi], n, i))
        .collect();

    let gens: Vec<RationalVector> = points.iter().map(|p| RationalVector::from_integers(&p.coords(false))).collect();
    let dual = dual_cone(&gens, 2)?;
    let normals: Vec<Vec<String>> = dual.normals.iter().map(RationalVector::to_strings).collect();
    println!("affine dual cone rays: {normals:?}");

    for lifted in [false, true] {
        let faces = enumerate_faces(&points, lifted)?;
        let sets: Vec<&Vec<usize>> = faces.iter().map(|f| &f.indices).collect();
        println!("{} faces: {sets:?}", if lifted { "lifted" } else { "affine" });
    }
    for f in maximal_admissible_faces(&points, true)? {
        let normal = f.normal.as_ref().map(RationalVector::to_strings).unwrap_or_default();
        println!("maximal admissible {:?} (dim {}) with normal {normal:?}", f.indices, f.dim);
    }
    Ok(())
}
