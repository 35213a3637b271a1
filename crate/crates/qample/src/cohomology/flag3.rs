//! Cohomology of line bundles on the full flag variety SL(3)/B in
//! characteristic zero, by the dot-action recursion: if lambda + rho is
//! singular everything vanishes; otherwise the unique Weyl element moving
//! it to the dominant chamber has some length l, and h^l is the dimension
//! of the irreducible with the conjugated highest weight.

use crate::error::Error;
use crate::Result;

/// Dimension of the irreducible SL(3) representation with highest weight
/// a*omega1 + b*omega2 (a, b >= 0).
pub fn weyl_dim3(a: i64, b: i64) -> u64 {
    debug_assert!(a >= 0 && b >= 0);
    let (x, y) = ((a + 1) as u128, (b + 1) as u128);
    let d = x * y * (x + y) / 2;
    u64::try_from(d).expect("representation dimension fits u64")
}

/// h^0..h^3 of the line bundle L(a,b) on SL(3)/B.
pub fn flag3_cohomology(a: i64, b: i64, ch: super::CharLabel) -> Result<Vec<u64>> {
    if let super::CharLabel::Prime(p) = ch {
        return Err(Error::UnsupportedCharacteristic(p));
    }
    let mut dims = vec![0u64; 4];
    // Shifted weight lambda + rho in fundamental-weight coordinates.
    let (mut x, mut y) = (a + 1, b + 1);
    if x == 0 || y == 0 || x + y == 0 {
        return Ok(dims);
    }
    let mut length = 0usize;
    let mut steps = 0;
    while !(x > 0 && y > 0) {
        if x < 0 {
            let (nx, ny) = (-x, x + y);
            x = nx;
            y = ny;
        } else {
            let (nx, ny) = (x + y, -y);
            x = nx;
            y = ny;
        }
        length += 1;
        steps += 1;
        assert!(steps <= 3, "dot-action reduction exceeded the longest element");
    }
    dims[length] = weyl_dim3(x - 1, y - 1);
    Ok(dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::CharLabel;

    #[test]
    fn dominant_weights_have_only_h0() {
        // L(1,1): the adjoint representation, dimension 8.
        assert_eq!(flag3_cohomology(1, 1, CharLabel::Zero).unwrap(), vec![8, 0, 0, 0]);
        assert_eq!(flag3_cohomology(0, 0, CharLabel::Zero).unwrap(), vec![1, 0, 0, 0]);
        assert_eq!(flag3_cohomology(2, 0, CharLabel::Zero).unwrap(), vec![6, 0, 0, 0]);
    }

    #[test]
    fn single_reflection_example() {
        assert_eq!(flag3_cohomology(-2, 1, CharLabel::Zero).unwrap(), vec![0, 1, 0, 0]);
    }

    #[test]
    fn singular_shifted_weight_vanishes() {
        assert_eq!(flag3_cohomology(-1, 5, CharLabel::Zero).unwrap(), vec![0, 0, 0, 0]);
        assert_eq!(flag3_cohomology(-1, -1, CharLabel::Zero).unwrap(), vec![0, 0, 0, 0]);
        assert_eq!(flag3_cohomology(3, -5, CharLabel::Zero).unwrap(), vec![0, 0, 0, 0]);
    }

    #[test]
    fn serre_duality_for_flag() {
        // K = L(-2,-2): h^i(a,b) = h^{3-i}(-2-a, -2-b).
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let d = flag3_cohomology(a, b, CharLabel::Zero).unwrap();
                let k = flag3_cohomology(-2 - a, -2 - b, CharLabel::Zero).unwrap();
                for i in 0..=3 {
                    assert_eq!(d[i], k[3 - i], "duality at ({a},{b}), i={i}");
                }
            }
        }
    }

    #[test]
    fn longest_element_example() {
        // Very negative weights land in h^3 with the dual dimension.
        assert_eq!(flag3_cohomology(-3, -3, CharLabel::Zero).unwrap(), vec![0, 0, 0, 8]);
    }

    #[test]
    fn char_p_unsupported() {
        assert!(flag3_cohomology(1, 1, CharLabel::Prime(5)).is_err());
    }
}
