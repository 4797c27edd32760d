//! Future-timelike vectors as 2×2 admissible matrices in signature (1,1):
//! the eigenvalues are ±|v| and norms obey the reverse triangle inequality.

use kreinval::minkowski::{add, check_reverse_triangle, minkowski_matrix, minkowski_norm};
use kreinval::spectral::{check_admissible, REALITY_TOL};

fn main() -> kreinval::Result<()> {
    let a = [0.0, 0.0, 1.0];
    let b = [0.6, 0.0, 1.0];
    let c = add(a, b);
    let sum = minkowski_matrix(a)?.try_add(&minkowski_matrix(b)?)?;
    let spec = check_admissible(&sum, REALITY_TOL)?;
    println!("a + b = {c:?}, |a + b| = {:.6}", minkowski_norm(c).unwrap());
    println!("spectrum of A + B: lambda {:?}, mu {:?}", spec.lambdas(), spec.mus());
    let report = check_reverse_triangle(a, b, 1e-10)?;
    for case in &report.cases {
        println!("{:<20} {:.6} {} {:.6}", case.case_id, case.lhs, case.relation.symbol(), case.rhs);
    }
    Ok(())
}
