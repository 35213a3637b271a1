//! Castelnuovo–Mumford regularity with respect to the geometry's
//! polarization, and the exact asymptotic volume-style estimate
//! h^i(mD) * n! / m^n.

use crate::cohomology::{CharLabel, Engine};
use crate::error::Error;
use crate::geometry::{class_add, class_scale, Geometry};
use crate::Result;
use num::{BigInt, BigRational};

/// True when H^i(L + (m - i)H) = 0 for all i >= 1.
pub fn is_regular_at(geom: &Geometry, engine: &Engine, class: &[i64], m: i64) -> Result<bool> {
    let n = geom.dim();
    let h = geom.polarization();
    for i in 1..=n {
        let twisted = class_add(class, &class_scale(&h, m - i as i64));
        let dims = geom.cohomology(engine, &twisted, CharLabel::Zero)?;
        if dims[i] != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least m such that H^i(L + (m - i)H) = 0 for all i >= 1.
pub fn regularity(geom: &Geometry, engine: &Engine, class: &[i64]) -> Result<i64> {
    let n = geom.dim() as i64;
    let maxabs = class.iter().map(|c| c.abs()).max().unwrap_or(0).max(1);
    let bound = (n + 1) * maxabs + n + 1;
    let mut first: Option<i64> = None;
    for m in -bound..=bound {
        if is_regular_at(geom, engine, class, m)? {
            first = Some(m);
            break;
        }
    }
    let Some(mut m) = first else {
        return Err(Error::SearchBoundExceeded {
            what: format!("regularity of {class:?} on {}", geom.name()),
            bound,
        });
    };
    // If the scan window opened already regular, walk down until it stops.
    if m == -bound {
        let floor = -8 * bound - 8;
        while m > floor && is_regular_at(geom, engine, class, m - 1)? {
            m -= 1;
        }
        if m <= floor {
            return Err(Error::Internal(format!(
                "regularity of {class:?} on {} appears unbounded below",
                geom.name()
            )));
        }
    }
    Ok(m)
}

/// Exact rational max of h^i(mL) * n! / m^n over m in [max(1, m_max/2), m_max].
pub fn asymptotic_h(
    geom: &Geometry,
    engine: &Engine,
    class: &[i64],
    i: usize,
    m_max: i64,
) -> Result<BigRational> {
    if m_max < 1 {
        return Err(Error::Usage("m_max must be at least 1".into()));
    }
    let n = geom.dim();
    if i > n {
        return Err(Error::Usage(format!("degree {i} exceeds dimension {n}")));
    }
    let n_fact: BigInt = (1..=n as u64).map(BigInt::from).product();
    let mut best = BigRational::from_integer(BigInt::from(-1));
    for m in (m_max / 2).max(1)..=m_max {
        let dims = geom.cohomology(engine, &class_scale(class, m), CharLabel::Zero)?;
        let mn: BigInt = (0..n).map(|_| BigInt::from(m)).product();
        let val = BigRational::new(BigInt::from(dims[i]) * &n_fact, mn);
        if val > best {
            best = val;
        }
    }
    Ok(best)
}
