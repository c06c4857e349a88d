//! Hermite normal form and a canonical integer kernel basis.

use orbclose::lattice::{hermite_normal_form, kernel_basis, rank_over_rationals};
use orbclose::IntMatrix;

fn print(name: &str, m: &IntMatrix) {
    println!("{name}:");
    for r in 0..m.rows() {
        let row: Vec<String> = m.row(r).iter().map(|x| format!("{x:>4}")).collect();
        println!("  [{}]", row.join(""));
    }
}

fn main() {
    // characters 1..4 of four components, with the all-ones row on top
    let a = IntMatrix::from_i64(&[&[1, 1, 1, 1], &[1, 2, 3, 4]]);
    let h = hermite_normal_form(&a);
    print("A", &a);
    print("H = A U", &h.form);
    print("U", &h.transform);
    println!("det U = {}, rank = {}", h.transform.determinant(), rank_over_rationals(&a));
    for v in kernel_basis(&a).vectors {
        let v: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("kernel vector ({})", v.join(", "));
    }
}
