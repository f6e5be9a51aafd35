use crate::error::{Error, Result};
use crate::scalar::Real;

/// `n - mod2(⌊(b + c) n / (a + b + c)⌋)` for the dihedral graph with edges `a, 2b, 2c, a`.
pub fn dihedral_nodal_formula<T: Real>(a: T, b: T, c: T, n: usize) -> i64 {
    let x = ((b + c) * T::from_count(n) / (a + b + c)).floor();
    n as i64 - x.to_i64().unwrap_or(0).rem_euclid(2)
}

/// Nodal count of the dihedral graph obtained by counting zeros on the two
/// side edges (`⌊a n / (a + b + c)⌋` of them) and fixing the parity of the rest
/// by evenness on the cycle: `n - mod2(n - ⌊a n / (a + b + c)⌋)`.
pub fn dihedral_nodal_count_by_sides<T: Real>(a: T, b: T, c: T, n: usize) -> i64 {
    let sides = (a * T::from_count(n) / (a + b + c)).floor().to_i64().unwrap_or(0);
    n as i64 - (n as i64 - sides).rem_euclid(2)
}

/// Among the first `n - 1` elements of the merged sequence `{j/α} ∪ {j/β}`
/// (`j ≥ 1`), how many come from the first set. Equal to `⌊α n / (α + β)⌋`
/// unless the merged sequence has a tie that makes the count ambiguous.
pub fn students_count<T: Real>(alpha: T, beta: T, n: usize) -> Result<u64> {
    if !(alpha > T::zero() && beta > T::zero()) {
        return Err(Error::InvalidArgument("alpha and beta must be positive".into()));
    }
    let x = alpha * T::from_count(n) / (alpha + beta);
    let tol = T::lit(1e-12) * x.abs().max(T::one());
    if n > 0 && (x - x.round()).abs() <= tol {
        return Err(Error::CommensurateTie { n });
    }
    Ok(students_count_unchecked(alpha, beta, n))
}

/// `⌊α n / (α + β)⌋` without the tie check.
pub fn students_count_unchecked<T: Real>(alpha: T, beta: T, n: usize) -> u64 {
    (alpha * T::from_count(n) / (alpha + beta)).floor().to_u64().unwrap_or(0)
}
