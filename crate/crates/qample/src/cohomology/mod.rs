//! Line-bundle cohomology on smooth complete toric varieties.
//!
//! For a divisor D = sum a_rho D_rho each lattice weight m contributes
//! the reduced simplicial cohomology of the induced complex on the rays
//! with <m, u_rho> < -a_rho (faces: ray sets spanning a cone), shifted by
//! one: multiplicity of m in H^i is dim H~^{i-1}, with H~^{-1} of the
//! empty complex one-dimensional.  Weights with nonzero contribution lie
//! in the convex hull of the Cartier data, so the engine enumerates the
//! bounding box of that hull dilated by one and asserts the dilation
//! shell contributes nothing.
//!
//! The walk never touches each lattice point individually in the hot
//! path: for fixed leading coordinates the ray sign pattern is piecewise
//! constant in the last coordinate, so counts are accumulated per pattern
//! over whole intervals, and the tiny per-pattern complexes are computed
//! once and memoized.

mod cache;
mod flag3;
mod oracles;
mod patterns;
pub mod regularity;

pub use cache::DiskCache;
pub use flag3::flag3_cohomology;
pub use oracles::{kunneth_oracle, split_bundle_oracle, p1_h0, p1_h1, p1xp1_dims};

use crate::divisor::{cartier_data, ToricDivisor};
use crate::error::Error;
use crate::lattice::Fan;
use crate::Result;
use dashmap::DashMap;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum CharLabel {
    Zero,
    Prime(u64),
}

impl CharLabel {
    pub fn key(&self) -> u64 {
        match self {
            CharLabel::Zero => 0,
            CharLabel::Prime(p) => *p,
        }
    }
    pub fn validate(&self) -> Result<()> {
        if let CharLabel::Prime(p) = self {
            let p = *p;
            if p < 2 {
                return Err(Error::UnsupportedCharacteristic(p));
            }
            let mut d = 2u64;
            while d.saturating_mul(d) <= p && d < 1_000_000 {
                if p % d == 0 {
                    return Err(Error::UnsupportedCharacteristic(p));
                }
                d += 1;
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for CharLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CharLabel::Zero => write!(f, "char 0"),
            CharLabel::Prime(p) => write!(f, "char {p}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightContribution {
    pub weight: Vec<i64>,
    pub degree: usize,
    pub multiplicity: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyTable {
    pub fan_name: String,
    pub fan_hash: String,
    pub coeffs: Vec<i64>,
    pub char_label: CharLabel,
    /// h^0 .. h^n in the requested characteristic.
    pub dims: Vec<u64>,
    /// Rational dims, present when a prime characteristic was requested.
    pub dims_char0: Option<Vec<u64>>,
    /// True when integral torsion makes dims differ between the requested
    /// characteristic and characteristic zero; both values are reported.
    pub torsion: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_weight: Option<Vec<WeightContribution>>,
}

impl CohomologyTable {
    pub fn euler(&self) -> i128 {
        self.dims
            .iter()
            .enumerate()
            .map(|(i, &d)| if i % 2 == 0 { d as i128 } else { -(d as i128) })
            .sum()
    }
}

#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub max_box_points: u128,
    pub max_prefixes: u128,
    pub per_weight: bool,
    /// Serre duality h^i(D) = h^{n-i}(K-D) is asserted on every table
    /// computed with this flag on (the default).
    pub check_duality: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            max_box_points: 4_000_000_000_000,
            max_prefixes: 40_000_000,
            per_weight: false,
            check_duality: true,
        }
    }
}

type TableKey = (String, Vec<i64>, u64);

pub struct Engine {
    pub opts: EngineOptions,
    tables: DashMap<TableKey, Arc<CohomologyTable>>,
    patterns: patterns::PatternStore,
    disk: Option<Mutex<DiskCache>>,
    disk_hits: AtomicU64,
}

impl Engine {
    pub fn new() -> Self {
        Engine::with_options(EngineOptions::default())
    }

    pub fn with_options(opts: EngineOptions) -> Self {
        Engine {
            opts,
            tables: DashMap::new(),
            patterns: patterns::PatternStore::new(),
            disk: None,
            disk_hits: AtomicU64::new(0),
        }
    }

    pub fn with_disk_cache(mut self, path: std::path::PathBuf) -> Result<Self> {
        self.disk = Some(Mutex::new(DiskCache::open(path)?));
        Ok(self)
    }

    pub fn cohomology(&self, d: &ToricDivisor, ch: CharLabel) -> Result<Arc<CohomologyTable>> {
        ch.validate()?;
        let coeffs = coeffs_i64(d)?;
        let key = (d.fan.hash_hex().to_string(), coeffs.clone(), ch.key());
        if let Some(t) = self.tables.get(&key) {
            return Ok(t.clone());
        }
        // Disk lookup; one in twenty hits is audited against a fresh
        // computation.
        if let Some(disk) = &self.disk {
            let hit = disk.lock().unwrap().lookup(&key);
            if let Some(entry) = hit {
                let n = self.disk_hits.fetch_add(1, Ordering::Relaxed);
                if n % 20 != 19 {
                    let table = Arc::new(CohomologyTable {
                        fan_name: d.fan.name().to_string(),
                        fan_hash: key.0.clone(),
                        coeffs,
                        char_label: ch,
                        dims: entry.dims,
                        dims_char0: entry.dims_char0,
                        torsion: entry.torsion,
                        per_weight: None,
                    });
                    self.tables.insert(key, table.clone());
                    return Ok(table);
                }
                let fresh = self.compute_table(d, &coeffs, ch)?;
                if fresh.dims != entry.dims {
                    return Err(Error::Internal(format!(
                        "cohomology cache audit failed for {:?}: cached {:?}, recomputed {:?}",
                        key, entry.dims, fresh.dims
                    )));
                }
                let table = Arc::new(fresh);
                self.tables.insert(key, table.clone());
                return Ok(table);
            }
        }
        let table = Arc::new(self.compute_table(d, &coeffs, ch)?);
        if let Some(disk) = &self.disk {
            disk.lock().unwrap().store(&key, &table)?;
        }
        self.tables.insert(key, table.clone());
        Ok(table)
    }

    /// Convenience: dims only.
    pub fn dims(&self, d: &ToricDivisor, ch: CharLabel) -> Result<Vec<u64>> {
        Ok(self.cohomology(d, ch)?.dims.clone())
    }

    fn compute_table(
        &self,
        d: &ToricDivisor,
        coeffs: &[i64],
        ch: CharLabel,
    ) -> Result<CohomologyTable> {
        let fan = &d.fan;
        let raw = self.raw_dims(fan, d, ch)?;
        if self.opts.check_duality {
            // h^i(D) = h^{n-i}(K_X - D); asserted on every table.
            let k_minus_d = ToricDivisor::canonical(fan).add(&d.neg());
            let dual = self.raw_dims(fan, &k_minus_d, ch)?;
            let n = fan.rank();
            for i in 0..=n {
                if raw.dims[i] != dual.dims[n - i] {
                    return Err(Error::Internal(format!(
                        "Serre duality violated on {} for {:?} in {}: h^{}={} vs dual h^{}={}",
                        fan.name(),
                        coeffs,
                        ch,
                        i,
                        raw.dims[i],
                        n - i,
                        dual.dims[n - i]
                    )));
                }
            }
        }
        let per_weight = if self.opts.per_weight {
            Some(self.per_weight_breakdown(fan, d, ch)?)
        } else {
            None
        };
        Ok(CohomologyTable {
            fan_name: fan.name().to_string(),
            fan_hash: fan.hash_hex().to_string(),
            coeffs: coeffs.to_vec(),
            char_label: ch,
            dims: raw.dims,
            dims_char0: raw.dims_char0,
            torsion: raw.torsion,
            per_weight,
        })
    }

    fn raw_dims(&self, fan: &Arc<Fan>, d: &ToricDivisor, ch: CharLabel) -> Result<RawDims> {
        let n = fan.rank();
        if n == 0 {
            return Ok(RawDims { dims: vec![1], dims_char0: None, torsion: false });
        }
        let rays = rays_i64(fan)?;
        let rhs: Vec<i64> = d
            .coeffs
            .iter()
            .map(|a| i64::try_from(-a).map_err(|_| Error::CoefficientOverflow(a.to_string())))
            .collect::<Result<_>>()?;
        let data = cartier_data(d);
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for m in &data {
            for i in 0..n {
                let v = i64::try_from(&m[i])
                    .map_err(|_| Error::CoefficientOverflow(m[i].to_string()))?;
                lo[i] = lo[i].min(v - 1);
                hi[i] = hi[i].max(v + 1);
            }
        }
        let mut points: u128 = 1;
        let mut prefixes: u128 = 1;
        for i in 0..n {
            let side = (hi[i] - lo[i] + 1) as u128;
            points = points.saturating_mul(side);
            if i + 1 < n {
                prefixes = prefixes.saturating_mul(side);
            }
        }
        if points > self.opts.max_box_points || prefixes > self.opts.max_prefixes {
            return Err(Error::RegionOverflow {
                points,
                cap: self.opts.max_box_points.min(self.opts.max_prefixes),
            });
        }
        if fan.n_rays() > 62 {
            return Err(Error::SizeCapExceeded(format!(
                "{} rays exceed the 62-ray pattern mask limit",
                fan.n_rays()
            )));
        }

        let counts = pattern_counts(&rays, &rhs, &lo, &hi);

        // Shell guard: the dilation shell must not contribute.
        self.assert_shell_silent(fan, &rays, &rhs, &lo, &hi, ch)?;

        let mut dims = vec![0u128; n + 1];
        let mut dims0 = vec![0u128; n + 1];
        let mut torsion = false;
        for (&mask, &count) in counts.iter() {
            let b0 = self.patterns.betti(fan, mask, None);
            let bp = match ch {
                CharLabel::Zero => b0.clone(),
                CharLabel::Prime(p) => self.patterns.betti(fan, mask, Some(p)),
            };
            if *bp != *b0 {
                torsion = true;
            }
            for i in 0..=n {
                dims[i] += count * bp[i] as u128;
                dims0[i] += count * b0[i] as u128;
            }
        }
        let to_u64 = |v: &Vec<u128>| -> Result<Vec<u64>> {
            v.iter()
                .map(|&x| u64::try_from(x).map_err(|_| Error::CoefficientOverflow(x.to_string())))
                .collect()
        };
        let dims = to_u64(&dims)?;
        let dims0 = to_u64(&dims0)?;
        Ok(RawDims {
            dims,
            dims_char0: if matches!(ch, CharLabel::Prime(_)) { Some(dims0) } else { None },
            torsion,
        })
    }

    fn assert_shell_silent(
        &self,
        fan: &Arc<Fan>,
        rays: &[Vec<i64>],
        rhs: &[i64],
        lo: &[i64],
        hi: &[i64],
        ch: CharLabel,
    ) -> Result<()> {
        let n = lo.len();
        let check = |m: &[i64]| -> Result<()> {
            let mask = mask_at(rays, rhs, m);
            let b0 = self.patterns.betti(fan, mask, None);
            let nonzero = match ch {
                CharLabel::Zero => b0.iter().any(|&x| x != 0),
                CharLabel::Prime(p) => {
                    b0.iter().any(|&x| x != 0)
                        || self.patterns.betti(fan, mask, Some(p)).iter().any(|&x| x != 0)
                }
            };
            if nonzero {
                return Err(Error::Internal(format!(
                    "weight {m:?} on the dilation shell contributes to cohomology on {}",
                    fan.name()
                )));
            }
            Ok(())
        };
        for axis in 0..n {
            for &pin in &[lo[axis], hi[axis]] {
                let mut m: Vec<i64> = lo.to_vec();
                m[axis] = pin;
                loop {
                    check(&m)?;
                    // odometer over the other axes
                    let mut carry = true;
                    for j in 0..n {
                        if j == axis {
                            continue;
                        }
                        if m[j] < hi[j] {
                            m[j] += 1;
                            carry = false;
                            break;
                        }
                        m[j] = lo[j];
                    }
                    if carry {
                        break;
                    }
                }
            }
        }
        Ok(())
    }

    fn per_weight_breakdown(
        &self,
        fan: &Arc<Fan>,
        d: &ToricDivisor,
        ch: CharLabel,
    ) -> Result<Vec<WeightContribution>> {
        let n = fan.rank();
        if n == 0 {
            return Ok(vec![WeightContribution { weight: vec![], degree: 0, multiplicity: 1 }]);
        }
        let rays = rays_i64(fan)?;
        let rhs: Vec<i64> = d.coeffs.iter().map(|a| i64::try_from(-a).unwrap()).collect();
        let data = cartier_data(d);
        let mut lo = vec![i64::MAX; n];
        let mut hi = vec![i64::MIN; n];
        for m in &data {
            for i in 0..n {
                let v = i64::try_from(&m[i]).unwrap();
                lo[i] = lo[i].min(v - 1);
                hi[i] = hi[i].max(v + 1);
            }
        }
        let mut points: u128 = 1;
        for i in 0..n {
            points = points.saturating_mul((hi[i] - lo[i] + 1) as u128);
        }
        if points > 2_000_000 {
            return Err(Error::RegionOverflow { points, cap: 2_000_000 });
        }
        let mut out = Vec::new();
        let mut m = lo.clone();
        loop {
            let mask = mask_at(&rays, &rhs, &m);
            let b = match ch {
                CharLabel::Zero => self.patterns.betti(fan, mask, None),
                CharLabel::Prime(p) => self.patterns.betti(fan, mask, Some(p)),
            };
            for (i, &mult) in b.iter().enumerate() {
                if mult > 0 {
                    out.push(WeightContribution { weight: m.clone(), degree: i, multiplicity: mult });
                }
            }
            let mut carry = true;
            for j in 0..n {
                if m[j] < hi[j] {
                    m[j] += 1;
                    carry = false;
                    break;
                }
                m[j] = lo[j];
            }
            if carry {
                break;
            }
        }
        Ok(out)
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

struct RawDims {
    dims: Vec<u64>,
    dims_char0: Option<Vec<u64>>,
    torsion: bool,
}

fn coeffs_i64(d: &ToricDivisor) -> Result<Vec<i64>> {
    d.coeffs
        .iter()
        .map(|a| i64::try_from(a).map_err(|_| Error::CoefficientOverflow(a.to_string())))
        .collect()
}

fn rays_i64(fan: &Fan) -> Result<Vec<Vec<i64>>> {
    fan.rays()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::CoefficientOverflow(x.to_string())))
                .collect()
        })
        .collect()
}

fn mask_at(rays: &[Vec<i64>], rhs: &[i64], m: &[i64]) -> u64 {
    let mut mask = 0u64;
    for (ri, u) in rays.iter().enumerate() {
        let dot: i128 = u.iter().zip(m).map(|(&a, &b)| a as i128 * b as i128).sum();
        if dot < rhs[ri] as i128 {
            mask |= 1 << ri;
        }
    }
    mask
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

/// Count lattice points per ray sign pattern by sweeping the last
/// coordinate in intervals.
fn pattern_counts(
    rays: &[Vec<i64>],
    rhs: &[i64],
    lo: &[i64],
    hi: &[i64],
) -> HashMap<u64, u128> {
    let n = lo.len();
    let last = n - 1;
    let (tlo, thi) = (lo[last], hi[last]);
    let mut counts: HashMap<u64, u128> = HashMap::new();
    let mut prefix: Vec<i64> = lo[..last].to_vec();
    // Per-ray threshold descriptors, rebuilt per prefix.
    #[derive(Clone, Copy)]
    enum Member {
        Const(bool),
        UpTo(i128),   // member iff t <= thr
        From(i128),   // member iff t >= thr
    }
    let mut descr: Vec<Member> = Vec::with_capacity(rays.len());
    loop {
        descr.clear();
        let mut cuts: Vec<i128> = Vec::new();
        for (ri, u) in rays.iter().enumerate() {
            let c: i128 = u[..last]
                .iter()
                .zip(&prefix)
                .map(|(&a, &b)| a as i128 * b as i128)
                .sum();
            let w = u[last] as i128;
            let r = rhs[ri] as i128;
            let m = if w == 0 {
                Member::Const(c < r)
            } else if w > 0 {
                let thr = floor_div(r - c - 1, w);
                if thr < thi as i128 {
                    cuts.push(thr + 1);
                }
                Member::UpTo(thr)
            } else {
                let thr = floor_div(r - c, w) + 1;
                if thr > tlo as i128 {
                    cuts.push(thr);
                }
                Member::From(thr)
            };
            descr.push(m);
        }
        cuts.retain(|&t| t > tlo as i128 && t <= thi as i128);
        cuts.sort_unstable();
        cuts.dedup();
        let mut seg_start = tlo as i128;
        let mut idx = 0;
        while seg_start <= thi as i128 {
            let seg_end = if idx < cuts.len() { cuts[idx] - 1 } else { thi as i128 };
            let mut mask = 0u64;
            for (ri, m) in descr.iter().enumerate() {
                let member = match *m {
                    Member::Const(b) => b,
                    Member::UpTo(thr) => seg_start <= thr,
                    Member::From(thr) => seg_start >= thr,
                };
                if member {
                    mask |= 1 << ri;
                }
            }
            *counts.entry(mask).or_insert(0) += (seg_end - seg_start + 1) as u128;
            seg_start = seg_end + 1;
            idx += 1;
        }
        // odometer over prefix coordinates
        if last == 0 {
            break;
        }
        let mut carry = true;
        for j in 0..last {
            if prefix[j] < hi[j] {
                prefix[j] += 1;
                carry = false;
                break;
            }
            prefix[j] = lo[j];
        }
        if carry {
            break;
        }
    }
    counts
}

#[cfg(test)]
mod tests;
