//! Independent oracles the engine is checked against.  These never call
//! the engine: they are closed forms assembled from the classical P^1
//! table h^0(O(d)) = max(d+1, 0), h^1(O(d)) = max(-d-1, 0).

use crate::error::Error;
use crate::Result;

pub fn p1_h0(d: i64) -> u64 {
    if d >= 0 {
        (d + 1) as u64
    } else {
        0
    }
}

pub fn p1_h1(d: i64) -> u64 {
    if d <= -2 {
        (-d - 1) as u64
    } else {
        0
    }
}

/// Cohomology of O(a,b) on P^1 x P^1 by the product formula.
pub fn p1xp1_dims(a: i64, b: i64) -> Vec<u64> {
    vec![
        p1_h0(a) * p1_h0(b),
        p1_h0(a) * p1_h1(b) + p1_h1(a) * p1_h0(b),
        p1_h1(a) * p1_h1(b),
    ]
}

/// Product oracle: h^k(X x Y, L1 boxtimes L2) = sum_{r+s=k} h^r h^s.
pub fn kunneth_oracle(dims1: &[u64], dims2: &[u64]) -> Vec<u64> {
    let n = dims1.len() + dims2.len() - 1;
    let mut out = vec![0u64; n];
    for (r, &x) in dims1.iter().enumerate() {
        for (s, &y) in dims2.iter().enumerate() {
            out[r + s] += x * y;
        }
    }
    out
}

/// Pushforward oracle for the projectivized split bundle over P^1 x P^1
/// with twist O(1,-1): for fiber degree c > 0 the bundle
/// pi^* O(a,b) (x) O_P(c) has
///   h^i = sum_{j=0}^{c} h^i(P^1 x P^1, O(a+j, b-j)),
/// and h^3 = 0.  Fiber degrees c <= 0 are outside the pushforward range.
pub fn split_bundle_oracle(a: i64, b: i64, c: i64) -> Result<Vec<u64>> {
    if c <= 0 {
        return Err(Error::UnsupportedTwist(format!(
            "split-bundle pushforward oracle needs fiber degree c > 0, got {c}"
        )));
    }
    let mut out = vec![0u64; 4];
    for j in 0..=c {
        let d = p1xp1_dims(a + j, b - j);
        for i in 0..3 {
            out[i] += d[i];
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_table() {
        assert_eq!(p1_h0(3), 4);
        assert_eq!(p1_h0(-1), 0);
        assert_eq!(p1_h1(-1), 0);
        assert_eq!(p1_h1(-2), 1);
        assert_eq!(p1_h1(-5), 4);
    }

    #[test]
    fn kunneth_of_p1_factors() {
        // O(2,-3) on P1 x P1: h^1 = 3 * 2 = 6.
        let d = kunneth_oracle(&[p1_h0(2), p1_h1(2)], &[p1_h0(-3), p1_h1(-3)]);
        assert_eq!(d, vec![0, 6, 0]);
    }

    #[test]
    fn split_oracle_examples() {
        // c=1, a=b=0: sections of O + O(1,-1) -> h^0 = 1.
        assert_eq!(split_bundle_oracle(0, 0, 1).unwrap(), vec![1, 0, 0, 0]);
        // c=2: O + O(1,-1) + O(2,-2); the last summand has h^1 = 3.
        assert_eq!(split_bundle_oracle(0, 0, 2).unwrap(), vec![1, 3, 0, 0]);
        assert!(split_bundle_oracle(1, 1, 0).is_err());
    }
}
