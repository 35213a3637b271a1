//! Torus-invariant divisors, numerical classes, and the polyhedral
//! positivity predicates that have exact answers: bigness (moment
//! polytope dimension) and pseudoeffectivity (membership in the cone of
//! invariant prime divisor classes).

use crate::error::Error;
use crate::lattice::{orbit_closure, Fan, OrbitClosure};
use crate::linalg::{rat_rows, solve_square_rational, Mat, RowSolver};
use crate::field::Rat;
use crate::Result;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToricDivisor {
    pub fan: Arc<Fan>,
    pub coeffs: Vec<BigInt>,
}

impl ToricDivisor {
    pub fn new(fan: Arc<Fan>, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != fan.n_rays() {
            return Err(Error::Usage(format!(
                "divisor has {} coefficients, fan has {} rays",
                coeffs.len(),
                fan.n_rays()
            )));
        }
        Ok(ToricDivisor { fan, coeffs })
    }

    pub fn from_i64(fan: &Arc<Fan>, coeffs: &[i64]) -> Result<Self> {
        ToricDivisor::new(fan.clone(), coeffs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn prime(fan: &Arc<Fan>, ray: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); fan.n_rays()];
        coeffs[ray] = BigInt::one();
        ToricDivisor { fan: fan.clone(), coeffs }
    }

    pub fn zero(fan: &Arc<Fan>) -> Self {
        ToricDivisor { fan: fan.clone(), coeffs: vec![BigInt::zero(); fan.n_rays()] }
    }

    /// The canonical divisor -sum of all prime invariant divisors.
    pub fn canonical(fan: &Arc<Fan>) -> Self {
        ToricDivisor { fan: fan.clone(), coeffs: vec![BigInt::from(-1); fan.n_rays()] }
    }

    pub fn add(&self, other: &ToricDivisor) -> ToricDivisor {
        assert_eq!(*self.fan, *other.fan);
        ToricDivisor {
            fan: self.fan.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> ToricDivisor {
        ToricDivisor { fan: self.fan.clone(), coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn neg(&self) -> ToricDivisor {
        ToricDivisor { fan: self.fan.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    /// div(chi^m) = sum <m, u_rho> D_rho.
    pub fn principal(fan: &Arc<Fan>, m: &[BigInt]) -> Self {
        let coeffs = fan
            .rays()
            .iter()
            .map(|u| u.iter().zip(m).map(|(a, b)| a * b).sum())
            .collect();
        ToricDivisor { fan: fan.clone(), coeffs }
    }
}

/// Cartier data of a divisor: for each maximal cone sigma the unique
/// weight m_sigma with <m_sigma, u_rho> = -a_rho for every ray of sigma.
pub fn cartier_data(d: &ToricDivisor) -> Vec<Vec<BigInt>> {
    let fan = &d.fan;
    let n = fan.rank();
    fan.max_cones()
        .iter()
        .map(|c| {
            if n == 0 {
                return Vec::new();
            }
            let a: Vec<Vec<BigRational>> = c
                .iter()
                .map(|&ri| {
                    fan.rays()[ri].iter().map(|x| BigRational::from_integer(x.clone())).collect()
                })
                .collect();
            let b: Vec<BigRational> =
                c.iter().map(|&ri| BigRational::from_integer(-d.coeffs[ri].clone())).collect();
            let m = solve_square_rational(&a, &b).expect("unimodular Cartier solve");
            m.into_iter()
                .map(|q| {
                    assert!(q.is_integer(), "smooth fan must have integral Cartier data");
                    q.to_integer()
                })
                .collect()
        })
        .collect()
}

/// Strict convexity of the support function: ample test for smooth
/// complete fans.  `strict = false` tests nefness instead.
pub fn is_ample(d: &ToricDivisor, strict: bool) -> bool {
    let data = cartier_data(d);
    let fan = &d.fan;
    for (ci, c) in fan.max_cones().iter().enumerate() {
        for (ri, u) in fan.rays().iter().enumerate() {
            if c.contains(&ri) {
                continue;
            }
            let pairing: BigInt = u.iter().zip(&data[ci]).map(|(a, b)| a * b).sum();
            let bound = -d.coeffs[ri].clone();
            let ok = if strict { pairing > bound } else { pairing >= bound };
            if !ok {
                return false;
            }
        }
    }
    true
}

/// Fixed basis of N^1(X)_Q: functionals (rows of `w`) on divisor
/// coefficient vectors that vanish on principal divisors, normalized so
/// the chosen basis prime divisors map to the standard basis.
#[derive(Debug, Clone)]
pub struct ClassBasis {
    pub fan: Arc<Fan>,
    pub basis_rays: Vec<usize>,
    w: Vec<Vec<BigRational>>,
}

impl ClassBasis {
    /// Picard rank = #rays - rank for smooth complete fans.
    pub fn picard_rank_of(fan: &Fan) -> usize {
        fan.n_rays() - fan.rank()
    }

    pub fn new(fan: Arc<Fan>, basis_rays: Vec<usize>) -> Result<Self> {
        let k = Self::picard_rank_of(&fan);
        if basis_rays.len() != k {
            return Err(Error::Usage(format!(
                "class basis needs {k} prime divisors, got {}",
                basis_rays.len()
            )));
        }
        // Raw functionals: left kernel of the ray matrix.
        let rays_i: Vec<Vec<i64>> = fan
            .rays()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).expect("desk-scale ray"))
                    .collect()
            })
            .collect();
        let m = rat_rows(&rays_i);
        let raw = m.left_kernel();
        assert_eq!(raw.len(), k, "kernel rank must equal Picard rank");
        // Change basis so that raw-coords of the chosen prime divisors
        // become the standard basis: w = S^{-1} raw, S[i][j] = raw_i(D_{b_j}).
        let s: Vec<Vec<BigRational>> = raw
            .iter()
            .map(|row| basis_rays.iter().map(|&b| row[b].0.clone()).collect())
            .collect();
        let mut w = Vec::with_capacity(k);
        for i in 0..k {
            // Solve S^T x = e_i; then w_i = sum_j x_j raw_j.
            let st: Vec<Vec<BigRational>> = (0..k).map(|r| (0..k).map(|c| s[c][r].clone()).collect()).collect();
            let mut e = vec![BigRational::zero(); k];
            e[i] = BigRational::one();
            let x = solve_square_rational(&st, &e).ok_or_else(|| {
                Error::Usage("chosen prime divisors do not form a class basis".into())
            })?;
            let mut row = vec![BigRational::zero(); fan.n_rays()];
            for (j, xj) in x.iter().enumerate() {
                for (c, val) in raw[j].iter().enumerate() {
                    row[c] += xj * &val.0;
                }
            }
            w.push(row);
        }
        Ok(ClassBasis { fan, basis_rays, w })
    }

    /// Greedy default: the first prime divisors whose raw classes are
    /// independent.
    pub fn default_for(fan: Arc<Fan>) -> Result<Self> {
        let k = Self::picard_rank_of(&fan);
        let rays_i: Vec<Vec<i64>> = fan
            .rays()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x).expect("desk-scale ray")).collect())
            .collect();
        let m = rat_rows(&rays_i);
        let raw = m.left_kernel();
        let mut chosen = Vec::new();
        let mut picked: Vec<Vec<Rat>> = Vec::new();
        for ray in 0..fan.n_rays() {
            if chosen.len() == k {
                break;
            }
            let col: Vec<Rat> = raw.iter().map(|row| row[ray].clone()).collect();
            let mut trial = picked.clone();
            trial.push(col.clone());
            let rank = Mat::new(trial.clone(), k).rank();
            if rank == chosen.len() + 1 {
                chosen.push(ray);
                picked.push(col);
            }
        }
        ClassBasis::new(fan, chosen)
    }

    pub fn rank(&self) -> usize {
        self.w.len()
    }

    pub fn class_of(&self, d: &ToricDivisor) -> NumericalClass {
        assert_eq!(*d.fan, *self.fan);
        let coords = self
            .w
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&d.coeffs)
                    .map(|(w, a)| w * &BigRational::from_integer(a.clone()))
                    .sum()
            })
            .collect();
        NumericalClass { coords }
    }

    /// An integral divisor representative of an integral class.
    pub fn lift(&self, class: &[BigInt]) -> ToricDivisor {
        assert_eq!(class.len(), self.rank());
        let mut coeffs = vec![BigInt::zero(); self.fan.n_rays()];
        for (i, &b) in self.basis_rays.iter().enumerate() {
            coeffs[b] = class[i].clone();
        }
        ToricDivisor { fan: self.fan.clone(), coeffs }
    }

    pub fn lift_i64(&self, class: &[i64]) -> ToricDivisor {
        self.lift(&class.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>())
    }

    /// Clear denominators of a rational class and lift; returns the
    /// divisor and the (positive) scale factor used.
    pub fn lift_rational(&self, class: &[BigRational]) -> (ToricDivisor, BigInt) {
        let mut denom = BigInt::one();
        for c in class {
            denom = num::Integer::lcm(&denom, c.denom());
        }
        let ints: Vec<BigInt> =
            class.iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect();
        (self.lift(&ints), denom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericalClass {
    pub coords: Vec<BigRational>,
}

impl NumericalClass {
    pub fn from_i64(coords: &[i64]) -> Self {
        NumericalClass {
            coords: coords.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect(),
        }
    }
    pub fn add(&self, o: &NumericalClass) -> NumericalClass {
        NumericalClass {
            coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect(),
        }
    }
    pub fn scale(&self, k: &BigRational) -> NumericalClass {
        NumericalClass { coords: self.coords.iter().map(|a| a * k).collect() }
    }
    pub fn neg(&self) -> NumericalClass {
        NumericalClass { coords: self.coords.iter().map(|a| -a).collect() }
    }
}

/// Moment polytope P_D = {m : <m, u_rho> >= -a_rho} as a vertex list.
/// Complete fans make P_D bounded, so vertex enumeration over all
/// rank-size constraint subsets is exhaustive.
pub fn polytope_vertices(d: &ToricDivisor) -> Vec<Vec<BigRational>> {
    let fan = &d.fan;
    let n = fan.rank();
    let nr = fan.n_rays();
    if n == 0 {
        return vec![vec![]];
    }
    let mut verts: Vec<Vec<BigRational>> = Vec::new();
    let mut subset = vec![0usize; n];
    fn rec(
        fan: &Fan,
        d: &ToricDivisor,
        n: usize,
        nr: usize,
        start: usize,
        depth: usize,
        subset: &mut Vec<usize>,
        verts: &mut Vec<Vec<BigRational>>,
    ) {
        if depth == n {
            let a: Vec<Vec<BigRational>> = subset
                .iter()
                .map(|&ri| {
                    fan.rays()[ri].iter().map(|x| BigRational::from_integer(x.clone())).collect()
                })
                .collect();
            let b: Vec<BigRational> = subset
                .iter()
                .map(|&ri| BigRational::from_integer(-d.coeffs[ri].clone()))
                .collect();
            if let Some(m) = solve_square_rational(&a, &b) {
                // Feasibility against all constraints.
                let ok = fan.rays().iter().enumerate().all(|(ri, u)| {
                    let lhs: BigRational = u
                        .iter()
                        .zip(&m)
                        .map(|(c, x)| BigRational::from_integer(c.clone()) * x)
                        .sum();
                    lhs >= BigRational::from_integer(-d.coeffs[ri].clone())
                });
                if ok && !verts.contains(&m) {
                    verts.push(m);
                }
            }
            return;
        }
        for ri in start..nr {
            subset[depth] = ri;
            rec(fan, d, n, nr, ri + 1, depth + 1, subset, verts);
        }
    }
    rec(fan, d, n, nr, 0, 0, &mut subset, &mut verts);
    verts
}

/// Affine dimension of the moment polytope (-1 when empty).
pub fn polytope_dim(d: &ToricDivisor) -> i64 {
    let verts = polytope_vertices(d);
    if verts.is_empty() {
        return -1;
    }
    let v0 = &verts[0];
    let rows: Vec<Vec<Rat>> = verts[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| Rat(a - b)).collect())
        .collect();
    if rows.is_empty() {
        return 0;
    }
    Mat::new(rows, v0.len()).rank() as i64
}

/// Big iff the moment polytope has full dimension; exact, and invariant
/// under numerical equivalence and positive scaling.
pub fn is_big(d: &ToricDivisor) -> bool {
    polytope_dim(d) == d.fan.rank() as i64
}

pub fn is_big_class(basis: &ClassBasis, class: &NumericalClass) -> bool {
    let (lift, _) = basis.lift_rational(&class.coords);
    is_big(&lift)
}

/// Pseudoeffective iff the class lies in the cone spanned by the classes
/// of the invariant prime divisors.  Caratheodory reduction: the class is
/// in the cone iff some independent subset of generator classes contains
/// it with nonnegative coordinates.
pub fn is_pseudoeffective(basis: &ClassBasis, class: &NumericalClass) -> bool {
    cone_member(
        &(0..basis.fan.n_rays())
            .map(|ri| basis.class_of(&ToricDivisor::prime(&basis.fan, ri)).coords)
            .collect::<Vec<_>>(),
        &class.coords,
    )
}

/// Exact membership of `target` in the convex cone spanned by
/// `generators` (all in Q^k).
pub fn cone_member(generators: &[Vec<BigRational>], target: &[BigRational]) -> bool {
    let k = target.len();
    if target.iter().all(|x| x.is_zero()) {
        return true;
    }
    let gen_rows: Vec<Vec<Rat>> =
        generators.iter().map(|g| g.iter().map(|x| Rat(x.clone())).collect()).collect();
    // Enumerate independent subsets of size <= k.
    let n = generators.len();
    let mut stack: Vec<Vec<usize>> = vec![vec![]];
    while let Some(sub) = stack.pop() {
        if !sub.is_empty() {
            let m = Mat::new(sub.iter().map(|&i| gen_rows[i].clone()).collect(), k);
            if m.rank() == sub.len() {
                let solver = RowSolver::new(&m);
                let t: Vec<Rat> = target.iter().map(|x| Rat(x.clone())).collect();
                if let Some(coeffs) = solver.solve(&t) {
                    if coeffs.iter().all(|c| !c.0.is_negative()) {
                        return true;
                    }
                }
            } else {
                continue; // dependent subset: no need to extend
            }
        }
        if sub.len() < k {
            let start = sub.last().map(|&x| x + 1).unwrap_or(0);
            for i in start..n {
                let mut next = sub.clone();
                next.push(i);
                stack.push(next);
            }
        }
    }
    false
}

/// Restrict a divisor to an orbit closure V(tau): shift by the Cartier
/// datum of a cone containing tau (making coefficients vanish on tau's
/// rays), then push coefficients to the star quotient along adjacent rays.
pub fn restrict(d: &ToricDivisor, oc: &OrbitClosure) -> Result<ToricDivisor> {
    if oc.parent_hash != d.fan.hash_hex() {
        return Err(Error::Usage("orbit closure belongs to a different fan".into()));
    }
    if oc.tau.is_empty() {
        return ToricDivisor::new(oc.fan.clone(), d.coeffs.clone());
    }
    let fan = &d.fan;
    let ci = fan
        .max_cones()
        .iter()
        .position(|c| oc.tau.iter().all(|t| c.contains(t)))
        .expect("tau is a face of some maximal cone");
    let m_sigma = &cartier_data(d)[ci];
    // a'_rho = a_rho + <m_sigma, u_rho> vanishes on sigma's rays, in
    // particular on tau's, so the shifted divisor descends to the star.
    let mut out = vec![BigInt::zero(); oc.fan.n_rays()];
    for (&parent, &quot) in &oc.ray_map {
        let shift: BigInt =
            fan.rays()[parent].iter().zip(m_sigma).map(|(a, b)| a * b).sum();
        out[quot] = &d.coeffs[parent] + shift;
    }
    ToricDivisor::new(oc.fan.clone(), out)
}

/// Restrict and return the class in the quotient's default basis.
pub fn restrict_class(
    d: &ToricDivisor,
    oc: &OrbitClosure,
    quotient_basis: &ClassBasis,
) -> Result<NumericalClass> {
    let r = restrict(d, oc)?;
    Ok(quotient_basis.class_of(&r))
}

pub fn orbit_restriction(d: &ToricDivisor, tau: &[usize]) -> Result<(OrbitClosure, ToricDivisor)> {
    let fan = d.fan.clone();
    let oc = orbit_closure(&fan, tau)?;
    let r = restrict(d, &oc)?;
    Ok((oc, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Fan;

    fn p1xp1() -> Arc<Fan> {
        Fan::build(
            2,
            vec![
                vec![1.into(), 0.into()],
                vec![0.into(), 1.into()],
                vec![(-1).into(), 0.into()],
                vec![0.into(), (-1).into()],
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            "P1xP1",
        )
        .unwrap()
    }

    fn basis() -> ClassBasis {
        ClassBasis::new(p1xp1(), vec![0, 1]).unwrap()
    }

    #[test]
    fn principal_divisors_have_zero_class() {
        let b = basis();
        for m in [[1i64, 0], [0, 1], [3, -2]] {
            let d = ToricDivisor::principal(&b.fan, &[m[0].into(), m[1].into()]);
            let c = b.class_of(&d);
            assert!(c.coords.iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn class_kernel_has_picard_rank() {
        let b = basis();
        assert_eq!(b.rank(), 2);
        let d0 = ToricDivisor::prime(&b.fan, 0);
        assert_eq!(b.class_of(&d0).coords, NumericalClass::from_i64(&[1, 0]).coords);
        let d2 = ToricDivisor::prime(&b.fan, 2);
        assert_eq!(b.class_of(&d2).coords, NumericalClass::from_i64(&[1, 0]).coords);
        let d3 = ToricDivisor::prime(&b.fan, 3);
        assert_eq!(b.class_of(&d3).coords, NumericalClass::from_i64(&[0, 1]).coords);
    }

    #[test]
    fn bigness_on_p1xp1_grid() {
        let b = basis();
        for a in -3i64..=3 {
            for c in -3i64..=3 {
                let d = b.lift_i64(&[a, c]);
                assert_eq!(is_big(&d), a > 0 && c > 0, "O({a},{c})");
            }
        }
    }

    #[test]
    fn pseudoeffective_on_p1xp1_is_first_quadrant() {
        let b = basis();
        for a in -3i64..=3 {
            for c in -3i64..=3 {
                let cls = NumericalClass::from_i64(&[a, c]);
                assert_eq!(is_pseudoeffective(&b, &cls), a >= 0 && c >= 0, "O({a},{c})");
            }
        }
    }

    #[test]
    fn big_implies_pseudoeffective() {
        let b = basis();
        for a in -3i64..=3 {
            for c in -3i64..=3 {
                let d = b.lift_i64(&[a, c]);
                if is_big(&d) {
                    assert!(is_pseudoeffective(&b, &b.class_of(&d)));
                }
            }
        }
    }

    #[test]
    fn ample_iff_both_positive_on_p1xp1() {
        let b = basis();
        for a in -2i64..=2 {
            for c in -2i64..=2 {
                let d = b.lift_i64(&[a, c]);
                assert_eq!(is_ample(&d, true), a > 0 && c > 0);
                assert_eq!(is_ample(&d, false), a >= 0 && c >= 0);
            }
        }
    }

    #[test]
    fn restriction_to_ray_star_on_p1xp1() {
        // D = O(a,b) restricted to a horizontal fiber is O(b) on P1.
        let b = basis();
        let d = b.lift_i64(&[2, 5]);
        let (oc, r) = orbit_restriction(&d, &[0]).unwrap();
        assert_eq!(oc.fan.rank(), 1);
        let qb = ClassBasis::default_for(oc.fan.clone()).unwrap();
        let deg = qb.class_of(&r).coords[0].clone();
        assert_eq!(deg, BigRational::from_integer(5.into()));
    }

    #[test]
    fn canonical_of_p1xp1_is_minus_2_minus_2() {
        let b = basis();
        let k = ToricDivisor::canonical(&b.fan);
        assert_eq!(b.class_of(&k).coords, NumericalClass::from_i64(&[-2, -2]).coords);
    }
}
