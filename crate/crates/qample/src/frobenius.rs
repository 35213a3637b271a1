//! Frobenius Tor lab over small F_p-algebras.
//!
//! Finite-dimensional commutative F_p-algebras are given by structure
//! constants (a preset catalog is embedded).  Two computations run on
//! normalized bar complexes with exact GF(p) linear algebra:
//!
//! * `frobenius_tor`: Hochschild homology of A with coefficients in the
//!   bimodule A (x) A whose right action is twisted by the N-th Frobenius
//!   power.  Flatness of Frobenius predicts (dim A, 0, 0, ...).
//! * `ordinary_frobenius_tor`: Tor^A(phi_* A, k), which detects
//!   singularity of the algebra (nonzero higher Tor).

use crate::cohomology::regularity::regularity;
use crate::cohomology::{CharLabel, Engine};
use crate::error::Error;
use crate::field::{Field, Gf};
use crate::geometry::{class_add, class_scale, Geometry};
use crate::linalg::{Mat, RowSolver};
use crate::positivity::{qtample_certificate, QTVerdict};
use crate::Result;
use serde::{Deserialize, Serialize};

/// Total matrix entries allowed per bar differential.
const MATRIX_ENTRY_CAP: usize = 1_000_000;

const PRESETS_JSON: &str = include_str!("frobenius_presets.json");

#[derive(Deserialize)]
struct PresetData {
    name: String,
    #[allow(dead_code)]
    basis: Vec<String>,
    unit: Vec<i64>,
    aug: Vec<i64>,
    mult: Vec<Vec<Vec<i64>>>,
}

/// Finite-dimensional commutative unital F_p-algebra with a chosen
/// augmentation (algebra character onto the ground field).
#[derive(Clone, Debug)]
pub struct FinAlgebra {
    pub name: String,
    pub p: u64,
    pub dim: usize,
    pub unit: Vec<Gf>,
    pub aug: Vec<Gf>,
    /// mult[i][j] = coordinates of e_i * e_j.
    pub mult: Vec<Vec<Vec<Gf>>>,
}

pub fn preset_names() -> Vec<String> {
    let data: Vec<PresetData> = serde_json::from_str(PRESETS_JSON).expect("embedded preset data");
    data.into_iter().map(|d| d.name).collect()
}

impl FinAlgebra {
    pub fn preset(name: &str, p: u64) -> Result<FinAlgebra> {
        if p < 2 || (2..p).any(|q| p % q == 0) {
            return Err(Error::Usage(format!("{p} is not prime")));
        }
        let data: Vec<PresetData> =
            serde_json::from_str(PRESETS_JSON).expect("embedded preset data");
        let d = data.iter().find(|d| d.name == name).ok_or_else(|| {
            Error::Usage(format!(
                "unknown algebra preset {name:?}; available: {}",
                preset_names().join(", ")
            ))
        })?;
        let dim = d.unit.len();
        let to_gf = |v: &[i64]| -> Vec<Gf> { v.iter().map(|&x| Gf::new(x, p)).collect() };
        let a = FinAlgebra {
            name: d.name.clone(),
            p,
            dim,
            unit: to_gf(&d.unit),
            aug: to_gf(&d.aug),
            mult: d.mult.iter().map(|row| row.iter().map(|v| to_gf(v)).collect()).collect(),
        };
        a.validate()?;
        Ok(a)
    }

    /// Exhaustive structure-constant checks: commutativity, associativity,
    /// the unit law, and multiplicativity of the augmentation.
    pub fn validate(&self) -> Result<()> {
        let d = self.dim;
        let bad = |what: String| Err(Error::Usage(format!("algebra {}: {what}", self.name)));
        if self.unit.len() != d
            || self.aug.len() != d
            || self.mult.len() != d
            || self.mult.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d))
        {
            return bad("inconsistent structure-constant shapes".to_string());
        }
        for i in 0..d {
            for j in 0..d {
                if self.mult[i][j] != self.mult[j][i] {
                    return bad(format!("not commutative at ({i},{j})"));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let lhs = self.mul_vec(&self.mult[i][j], &basis_vec(d, k, self.p));
                    let rhs = self.mul_vec(&basis_vec(d, i, self.p), &self.mult[j][k]);
                    if lhs != rhs {
                        return bad(format!("not associative at ({i},{j},{k})"));
                    }
                }
            }
        }
        for i in 0..d {
            if self.mul_vec(&self.unit, &basis_vec(d, i, self.p)) != basis_vec(d, i, self.p) {
                return bad(format!("unit law fails on e_{i}"));
            }
        }
        if !self.eps(&self.unit).sub(&Gf::new(1, self.p)).is_zero() {
            return bad("augmentation of the unit is not 1".to_string());
        }
        for i in 0..d {
            for j in 0..d {
                let lhs = self.eps(&self.mult[i][j]);
                let rhs = self.aug[i].mul(&self.aug[j]);
                if lhs != rhs {
                    return bad(format!("augmentation is not multiplicative at ({i},{j})"));
                }
            }
        }
        Ok(())
    }

    pub fn mul_vec(&self, a: &[Gf], b: &[Gf]) -> Vec<Gf> {
        let mut out = vec![Gf::new(0, self.p); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai.mul(bj);
                for (t, m) in self.mult[i][j].iter().enumerate() {
                    out[t] = out[t].add(&c.mul(m));
                }
            }
        }
        out
    }

    pub fn eps(&self, v: &[Gf]) -> Gf {
        let mut s = Gf::new(0, self.p);
        for (a, b) in self.aug.iter().zip(v) {
            s = s.add(&a.mul(b));
        }
        s
    }

    /// Matrix of the N-th Frobenius power phi^N(v) = v^(p^N); rows are the
    /// images of the basis vectors (Frobenius is F_p-linear).
    pub fn frobenius_matrix(&self, n: u32) -> Vec<Vec<Gf>> {
        let d = self.dim;
        let mut rows: Vec<Vec<Gf>> = (0..d).map(|i| basis_vec(d, i, self.p)).collect();
        for _ in 0..n {
            rows = rows
                .iter()
                .map(|v| {
                    let mut acc = self.unit.clone();
                    for _ in 0..self.p {
                        acc = self.mul_vec(&acc, v);
                    }
                    acc
                })
                .collect();
        }
        rows
    }

    /// Basis of the augmentation ideal (rows in A-coordinates).
    fn abar_basis(&self) -> Vec<Vec<Gf>> {
        let col = Mat::new(self.aug.iter().map(|a| vec![*a]).collect(), 1);
        col.left_kernel()
    }
}

fn basis_vec(d: usize, i: usize, p: u64) -> Vec<Gf> {
    let mut v = vec![Gf::new(0, p); d];
    v[i] = Gf::new(1, p);
    v
}

/// Normalized bar complex data for a bimodule M over a FinAlgebra.
struct BarComplex {
    p: u64,
    m_dim: usize,
    e: usize,
    /// right[k]: matrix of the right action of the k-th augmentation-ideal
    /// basis element on M (rows = images of M basis vectors).
    right: Vec<Vec<Vec<Gf>>>,
    /// Left action for the wrap-around Hochschild face; None for the
    /// Tor complex, where the augmentation kills that face.
    left: Option<Vec<Vec<Vec<Gf>>>>,
    /// prod[j][k]: coordinates in the augmentation-ideal basis of the
    /// non-degenerate part of abar_j * abar_k.
    prod: Vec<Vec<Vec<Gf>>>,
}

impl BarComplex {
    fn new(a: &FinAlgebra, m_dim: usize, right: Vec<Vec<Vec<Gf>>>, left: Option<Vec<Vec<Vec<Gf>>>>) -> Result<Self> {
        let abar = a.abar_basis();
        let e = abar.len();
        let mut prod = vec![vec![Vec::new(); e]; e];
        if e > 0 {
            let solver = RowSolver::new(&Mat::new(abar.clone(), a.dim));
            for j in 0..e {
                for k in 0..e {
                    let v = a.mul_vec(&abar[j], &abar[k]);
                    let s = a.eps(&v);
                    let w: Vec<Gf> =
                        v.iter().zip(&a.unit).map(|(x, u)| x.sub(&s.mul(u))).collect();
                    prod[j][k] = solver.solve(&w).ok_or_else(|| {
                        Error::Internal("augmentation-ideal product left its span".to_string())
                    })?;
                }
            }
        }
        Ok(BarComplex { p: a.p, m_dim, e, right, left, prod })
    }

    fn chain_dim(&self, n: usize) -> usize {
        if self.e == 0 {
            return if n == 0 { self.m_dim } else { 0 };
        }
        self.m_dim * self.e.pow(n as u32)
    }

    /// Differential C_n -> C_{n-1} (n >= 1) as a matrix whose rows are
    /// images of the C_n basis.  Basis index: m slowest, then the tensor
    /// slots left to right.
    fn differential(&self, n: usize) -> Result<Mat<Gf>> {
        let rows_n = self.chain_dim(n);
        let cols = self.chain_dim(n - 1);
        if rows_n.saturating_mul(cols) > MATRIX_ENTRY_CAP {
            return Err(Error::SizeCapExceeded(format!(
                "bar differential {rows_n} x {cols} exceeds {MATRIX_ENTRY_CAP} entries"
            )));
        }
        let zero = Gf::new(0, self.p);
        let one = Gf::new(1, self.p);
        let mut rows = Vec::with_capacity(rows_n);
        let mut js = vec![0usize; n];
        for m in 0..self.m_dim {
            loop {
                let mut out = vec![zero; cols];
                let idx = |m2: usize, slots: &[usize]| -> usize {
                    let mut t = m2;
                    for &s in slots {
                        t = t * self.e + s;
                    }
                    t
                };
                // Face 0: the module absorbs the first slot.
                for (m2, c) in self.right[js[0]][m].iter().enumerate() {
                    if !c.is_zero() {
                        out[idx(m2, &js[1..])] = out[idx(m2, &js[1..])].add(c);
                    }
                }
                // Faces 1..n-1: adjacent slots multiply.
                let mut sign = one;
                for i in 0..n.saturating_sub(1) {
                    sign = sign.neg();
                    for (t, c) in self.prod[js[i]][js[i + 1]].iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut slots: Vec<usize> = Vec::with_capacity(n - 1);
                        slots.extend_from_slice(&js[..i]);
                        slots.push(t);
                        slots.extend_from_slice(&js[i + 2..]);
                        let k = idx(m, &slots);
                        out[k] = out[k].add(&sign.mul(c));
                    }
                }
                // Face n: wrap-around (Hochschild) or augmentation (Tor).
                if let Some(left) = &self.left {
                    let sign = if n % 2 == 0 { one } else { one.neg() };
                    for (m2, c) in left[js[n - 1]][m].iter().enumerate() {
                        if !c.is_zero() {
                            let k = idx(m2, &js[..n - 1]);
                            out[k] = out[k].add(&sign.mul(c));
                        }
                    }
                }
                rows.push(out);
                // Odometer over the tensor slots.
                let mut carry = n;
                while carry > 0 {
                    js[carry - 1] += 1;
                    if js[carry - 1] < self.e {
                        break;
                    }
                    js[carry - 1] = 0;
                    carry -= 1;
                }
                if carry == 0 {
                    break;
                }
            }
            if self.e == 0 {
                break;
            }
        }
        Ok(Mat::new(rows, cols))
    }

    fn homology_dims(&self, n_max: usize) -> Result<Vec<u64>> {
        if self.e == 0 {
            let mut dims = vec![0u64; n_max + 1];
            dims[0] = self.m_dim as u64;
            return Ok(dims);
        }
        let mut ranks = vec![0usize; n_max + 2];
        for n in 1..=(n_max + 1) {
            ranks[n] = self.differential(n)?.rank();
        }
        Ok((0..=n_max)
            .map(|n| (self.chain_dim(n) - ranks[n] - ranks[n + 1]) as u64)
            .collect())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TorReport {
    pub algebra: String,
    pub p: u64,
    pub frobenius_power: u32,
    pub dims: Vec<u64>,
    /// Whether the table equals (dim A, 0, ..., 0).
    pub flat_shape: bool,
}

fn action_of_abar(a: &FinAlgebra, basis_action: &[Vec<Vec<Gf>>]) -> Vec<Vec<Vec<Gf>>> {
    let m_dim = basis_action.first().map_or(0, |m| m.len());
    a.abar_basis()
        .iter()
        .map(|coords| {
            let mut acc = vec![vec![Gf::new(0, a.p); m_dim]; m_dim];
            for (s, c) in coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (r, row) in basis_action[s].iter().enumerate() {
                    for (t, v) in row.iter().enumerate() {
                        acc[r][t] = acc[r][t].add(&c.mul(v));
                    }
                }
            }
            acc
        })
        .collect()
}

/// Hochschild homology of A with coefficients in the bimodule A (x) A,
/// left action on the first factor, right action twisted through the
/// N-th Frobenius power on the second.
pub fn frobenius_tor(a: &FinAlgebra, n_twist: u32, n_max: usize) -> Result<TorReport> {
    let d = a.dim;
    let m_dim = d * d;
    let frob = a.frobenius_matrix(n_twist);
    let midx = |x: usize, y: usize| x * d + y;
    // Per algebra basis element s: matrices of s acting on M = A (x) A.
    let mut left_basis = vec![vec![vec![Gf::new(0, a.p); m_dim]; m_dim]; d];
    let mut right_basis = vec![vec![vec![Gf::new(0, a.p); m_dim]; m_dim]; d];
    for s in 0..d {
        for x in 0..d {
            for y in 0..d {
                let m = midx(x, y);
                // s . (e_x (x) e_y) = (e_s e_x) (x) e_y
                for (x2, c) in a.mult[s][x].iter().enumerate() {
                    left_basis[s][m][midx(x2, y)] = left_basis[s][m][midx(x2, y)].add(c);
                }
                // (e_x (x) e_y) . s = e_x (x) phi^N(e_s) e_y
                let img = a.mul_vec(&frob[s], &basis_vec(d, y, a.p));
                for (y2, c) in img.iter().enumerate() {
                    right_basis[s][m][midx(x, y2)] = right_basis[s][m][midx(x, y2)].add(c);
                }
            }
        }
    }
    let bar = BarComplex::new(
        a,
        m_dim,
        action_of_abar(a, &right_basis),
        Some(action_of_abar(a, &left_basis)),
    )?;
    let dims = bar.homology_dims(n_max)?;
    let flat_shape = dims[0] == d as u64 && dims[1..].iter().all(|&x| x == 0);
    Ok(TorReport { algebra: a.name.clone(), p: a.p, frobenius_power: n_twist, dims, flat_shape })
}

/// Tor^A_*(phi^N_* A, k): A as a module over itself through the N-th
/// Frobenius power, resolved against the augmentation module.
pub fn ordinary_frobenius_tor(a: &FinAlgebra, n_twist: u32, n_max: usize) -> Result<TorReport> {
    let d = a.dim;
    let frob = a.frobenius_matrix(n_twist);
    // m . s = phi^N(s) m  inside A.
    let mut right_basis = vec![vec![vec![Gf::new(0, a.p); d]; d]; d];
    for s in 0..d {
        for m in 0..d {
            let img = a.mul_vec(&frob[s], &basis_vec(d, m, a.p));
            for (t, c) in img.iter().enumerate() {
                right_basis[s][m][t] = right_basis[s][m][t].add(c);
            }
        }
    }
    let bar = BarComplex::new(a, d, action_of_abar(a, &right_basis), None)?;
    let dims = bar.homology_dims(n_max)?;
    let flat_shape = dims[1..].iter().all(|&x| x == 0);
    Ok(TorReport { algebra: a.name.clone(), p: a.p, frobenius_power: n_twist, dims, flat_shape })
}

#[derive(Clone, Debug, Serialize)]
pub struct CharpEntry {
    pub p: u64,
    pub b: u32,
    pub power: i64,
    /// (cohomological degree, dimension) for every degree above q.
    pub groups: Vec<(usize, u64)>,
    pub all_vanish: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharpReport {
    pub geometry: String,
    pub class: Vec<i64>,
    pub q: usize,
    pub twist: Vec<i64>,
    pub certificate_n: u64,
    pub twist_regularity: i64,
    pub entries: Vec<CharpEntry>,
    pub holds: bool,
}

/// Characteristic-p vanishing probe: with a certificate exponent N for L
/// at level q and p^b at least the regularity of the twist M, check
/// H^i(L^(N p^b) + M) = 0 for all i > q in characteristic p.
pub fn charp_vanishing_probe(
    geom: &Geometry,
    engine: &Engine,
    class: &[i64],
    q: usize,
    twist: &[i64],
    primes: &[u64],
    b_max: u32,
    n_max: u64,
) -> Result<CharpReport> {
    let n = geom.dim();
    let cert = qtample_certificate(geom, engine, class, q, n_max)?;
    let cert_n = match cert.verdict {
        QTVerdict::Certified { n } => n,
        QTVerdict::ExactTrue => 1,
        _ => {
            return Err(Error::HypothesisFails(format!(
                "no q-ampleness certificate for {class:?} at q = {q} up to N = {n_max}"
            )))
        }
    };
    let reg = regularity(geom, engine, twist)?;
    let gate = reg.max(1);
    let mut entries = Vec::new();
    let mut holds = true;
    for &p in primes {
        for b in 1..=b_max {
            let power = (p as i64)
                .checked_pow(b)
                .ok_or_else(|| Error::Usage(format!("{p}^{b} overflows")))?;
            if power < gate {
                continue;
            }
            let c = class_add(&class_scale(class, cert_n as i64 * power), twist);
            let dims = geom.cohomology(engine, &c, CharLabel::Prime(p))?;
            let groups: Vec<(usize, u64)> = (q + 1..=n).map(|i| (i, dims[i])).collect();
            let all_vanish = groups.iter().all(|&(_, h)| h == 0);
            holds &= all_vanish;
            entries.push(CharpEntry { p, b, power, groups, all_vanish });
        }
    }
    Ok(CharpReport {
        geometry: geom.name(),
        class: class.to_vec(),
        q,
        twist: twist.to_vec(),
        certificate_n: cert_n,
        twist_regularity: reg,
        entries,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_instantiate_and_validate() {
        for name in preset_names() {
            for p in [2u64, 3, 5] {
                let a = FinAlgebra::preset(&name, p).unwrap();
                assert!(a.dim >= 1, "{name}");
            }
        }
        assert!(FinAlgebra::preset("k[x]/x^2", 6).is_err());
        assert!(FinAlgebra::preset("nope", 2).is_err());
    }

    #[test]
    fn validation_rejects_broken_tables() {
        let mut a = FinAlgebra::preset("k[x]/x^2", 3).unwrap();
        a.mult[1][1][0] = Gf::new(1, 3); // x*x = 1 breaks associativity vs augmentation
        assert!(a.validate().is_err());
    }

    #[test]
    fn frobenius_matrix_squares_elements() {
        let a = FinAlgebra::preset("k[x]/x^3", 2).unwrap();
        let f = a.frobenius_matrix(1);
        // phi(x) = x^2, phi(x^2) = x^4 = 0.
        assert_eq!(f[1], vec![Gf::new(0, 2), Gf::new(0, 2), Gf::new(1, 2)]);
        assert!(f[2].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn bar_differentials_compose_to_zero() {
        let a = FinAlgebra::preset("k[x]/x^3", 2).unwrap();
        let d = a.dim;
        let frob = a.frobenius_matrix(1);
        let mut right = vec![vec![vec![Gf::new(0, 2); d]; d]; d];
        for s in 0..d {
            for m in 0..d {
                let img = a.mul_vec(&frob[s], &basis_vec(d, m, 2));
                for (t, c) in img.iter().enumerate() {
                    right[s][m][t] = *c;
                }
            }
        }
        let bar = BarComplex::new(&a, d, action_of_abar(&a, &right), None).unwrap();
        for n in 2..=4 {
            let dn = bar.differential(n).unwrap();
            let dm = bar.differential(n - 1).unwrap();
            for row in &dn.rows {
                let mut out = vec![Gf::new(0, 2); dm.cols];
                for (j, c) in row.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (t, v) in dm.rows[j].iter().enumerate() {
                        out[t] = out[t].add(&c.mul(v));
                    }
                }
                assert!(out.iter().all(|x| x.is_zero()), "d^2 != 0 at n = {n}");
            }
        }
    }

    #[test]
    fn twisted_hochschild_is_flat_shaped_on_all_presets() {
        for name in preset_names() {
            let a = FinAlgebra::preset(&name, 2).unwrap();
            let r = frobenius_tor(&a, 1, 2).unwrap();
            assert!(r.flat_shape, "{name}: {:?}", r.dims);
            assert_eq!(r.dims[0], a.dim as u64);
        }
    }

    #[test]
    fn ordinary_tor_detects_singularity() {
        let a = FinAlgebra::preset("k[x]/x^2", 2).unwrap();
        let r = ordinary_frobenius_tor(&a, 1, 3).unwrap();
        assert_eq!(r.dims, vec![2, 2, 2, 2]);
        assert!(!r.flat_shape);

        let a = FinAlgebra::preset("k[x]/x^2 x k", 2).unwrap();
        let r = ordinary_frobenius_tor(&a, 1, 2).unwrap();
        assert!(r.dims[1] > 0, "{:?}", r.dims);
    }

    #[test]
    fn ordinary_tor_vanishes_on_regular_presets() {
        for name in ["k", "k x k"] {
            for p in [2u64, 3] {
                let a = FinAlgebra::preset(name, p).unwrap();
                let r = ordinary_frobenius_tor(&a, 1, 3).unwrap();
                assert!(r.flat_shape, "{name} mod {p}: {:?}", r.dims);
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let a = FinAlgebra::preset("k[x]/x^4", 2).unwrap();
        assert!(matches!(frobenius_tor(&a, 1, 8), Err(Error::SizeCapExceeded(_))));
    }

    #[test]
    fn charp_probe_on_the_quadric() {
        let g = Geometry::builtin("p1xp1").unwrap();
        let e = Engine::new();
        let rep =
            charp_vanishing_probe(&g, &e, &[1, 0], 1, &[-2, -2], &[2, 3, 5], 2, 8).unwrap();
        assert_eq!(rep.certificate_n, 2);
        assert_eq!(rep.twist_regularity, 3);
        assert!(rep.holds);
        // p = 2, b = 1 falls below the regularity gate and is skipped.
        assert!(!rep.entries.iter().any(|en| en.p == 2 && en.b == 1));
        assert!(rep.entries.iter().any(|en| en.p == 2 && en.b == 2));
        assert!(rep.entries.iter().any(|en| en.p == 3 && en.b == 1));

        let err = charp_vanishing_probe(&g, &e, &[-1, -1], 1, &[0, 0], &[2], 1, 4);
        assert!(matches!(err, Err(Error::HypothesisFails(_))));
    }
}
