//! Fans of smooth complete toric varieties.
//!
//! A fan is given by its primitive ray generators and the maximal cones as
//! ray-index sets.  Construction validates everything up front: rays
//! primitive, maximal cones unimodular bases (smooth), every codimension-1
//! cone shared by exactly two maximal cones, adjacency graph connected,
//! and a deterministic generic-direction sweep confirming the cones cover
//! the lattice once with no overlap.  Fans are immutable after
//! construction and shared via `Arc`.

use crate::error::Error;
use crate::linalg::{det_bigint, solve_square_rational};
use crate::Result;
use num::{BigInt, BigRational, Integer, Signed, Zero};
use once_cell::sync::OnceCell;
use sha2::{Digest, Sha256};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

#[derive(Debug)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<BigInt>>,
    max_cones: Vec<Vec<usize>>,
    name: String,
    faces: OnceCell<BTreeSet<Vec<usize>>>,
    hash: OnceCell<String>,
}

impl PartialEq for Fan {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.rays == other.rays && self.max_cones == other.max_cones
    }
}
impl Eq for Fan {}

fn is_primitive(v: &[BigInt]) -> bool {
    let mut g = BigInt::zero();
    for x in v {
        g = g.gcd(x);
    }
    g == BigInt::from(1)
}

impl Fan {
    pub fn build(
        rank: usize,
        rays: Vec<Vec<BigInt>>,
        max_cones: Vec<Vec<usize>>,
        name: impl Into<String>,
    ) -> Result<Arc<Fan>> {
        let name = name.into();
        if rank == 0 {
            if !rays.is_empty() || max_cones != vec![Vec::<usize>::new()] {
                return Err(Error::BadFaceStructure(
                    "rank-0 fan must have no rays and a single empty maximal cone".into(),
                ));
            }
            let fan = Fan { rank, rays, max_cones, name, faces: OnceCell::new(), hash: OnceCell::new() };
            return Ok(Arc::new(fan));
        }

        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(Error::BadFaceStructure(format!(
                    "ray {i} has {} coordinates, fan rank is {rank}",
                    r.len()
                )));
            }
            if !is_primitive(r) {
                return Err(Error::NonPrimitiveRay { index: i, ray: format!("{r:?}") });
            }
        }
        let mut seen_rays = BTreeSet::new();
        for (i, r) in rays.iter().enumerate() {
            if !seen_rays.insert(r.clone()) {
                return Err(Error::BadFaceStructure(format!("duplicate ray at index {i}")));
            }
        }

        let mut cones: Vec<Vec<usize>> = Vec::with_capacity(max_cones.len());
        for c in &max_cones {
            let mut s: Vec<usize> = c.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != c.len() {
                return Err(Error::BadFaceStructure(format!("repeated ray index in cone {c:?}")));
            }
            if s.len() != rank {
                return Err(Error::BadFaceStructure(format!(
                    "maximal cone {c:?} has {} rays; a smooth complete fan of rank {rank} needs {rank}",
                    s.len()
                )));
            }
            if s.iter().any(|&i| i >= rays.len()) {
                return Err(Error::BadFaceStructure(format!("cone {c:?} references a missing ray")));
            }
            cones.push(s);
        }
        let cone_set: BTreeSet<&Vec<usize>> = cones.iter().collect();
        if cone_set.len() != cones.len() {
            return Err(Error::BadFaceStructure("duplicate maximal cone".into()));
        }
        let mut used: BTreeSet<usize> = BTreeSet::new();
        for c in &cones {
            used.extend(c.iter().copied());
        }
        if used.len() != rays.len() {
            return Err(Error::BadFaceStructure("a ray appears in no maximal cone".into()));
        }

        // Smoothness: each maximal cone's rays form a Z-basis.
        for c in &cones {
            let m: Vec<Vec<BigInt>> = c.iter().map(|&i| rays[i].clone()).collect();
            let d = det_bigint(&m);
            if d.abs() != BigInt::from(1) {
                return Err(Error::NotSmooth { cone: c.clone(), det: d.to_string() });
            }
        }

        // Each facet (codim-1 face) of a maximal cone in exactly two cones.
        let mut facet_count: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        for (ci, c) in cones.iter().enumerate() {
            for drop in 0..c.len() {
                let mut f = c.clone();
                f.remove(drop);
                facet_count.entry(f).or_default().push(ci);
            }
        }
        for (f, owners) in &facet_count {
            match owners.len() {
                2 => {}
                1 => {
                    return Err(Error::NotComplete(format!(
                        "codimension-1 cone {f:?} lies in only one maximal cone"
                    )))
                }
                n => {
                    return Err(Error::BadFaceStructure(format!(
                        "codimension-1 cone {f:?} lies in {n} maximal cones"
                    )))
                }
            }
        }

        // Adjacency graph connected.
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); cones.len()];
        for owners in facet_count.values() {
            adj[owners[0]].push(owners[1]);
            adj[owners[1]].push(owners[0]);
        }
        let mut visited = vec![false; cones.len()];
        let mut stack = vec![0usize];
        visited[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &adj[i] {
                if !visited[j] {
                    visited[j] = true;
                    stack.push(j);
                }
            }
        }
        if visited.iter().any(|v| !v) {
            return Err(Error::NotComplete("maximal-cone adjacency graph is disconnected".into()));
        }

        // No ray may lie inside a foreign maximal cone.
        for (ri, r) in rays.iter().enumerate() {
            for c in &cones {
                if c.contains(&ri) {
                    continue;
                }
                if let Some(coords) = cone_coords(&rays, c, r) {
                    if coords.iter().all(|x| !x.is_negative()) {
                        return Err(Error::BadFaceStructure(format!(
                            "ray {ri} lies inside maximal cone {c:?}"
                        )));
                    }
                }
            }
        }

        // Generic-direction coverage: a generic vector must lie strictly
        // inside exactly one maximal cone.  Deterministic LCG sampling.
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 4001) as i64 - 2000
        };
        let mut good_samples = 0;
        let mut attempts = 0;
        while good_samples < 8 && attempts < 200 {
            attempts += 1;
            let v: Vec<BigInt> = (0..rank).map(|_| BigInt::from(next())).collect();
            let mut strict = 0usize;
            let mut boundary = false;
            for c in &cones {
                if let Some(coords) = cone_coords(&rays, c, &v) {
                    if coords.iter().all(|x| x.is_positive()) {
                        strict += 1;
                    } else if coords.iter().all(|x| !x.is_negative()) {
                        boundary = true;
                    }
                }
            }
            if boundary {
                continue; // resample: direction hit a cone boundary
            }
            match strict {
                1 => good_samples += 1,
                0 => {
                    return Err(Error::NotComplete(format!(
                        "direction {v:?} is not covered by any maximal cone"
                    )))
                }
                n => {
                    return Err(Error::BadFaceStructure(format!(
                        "direction {v:?} lies in {n} maximal cone interiors (overlap)"
                    )))
                }
            }
        }
        if good_samples < 8 {
            return Err(Error::Internal("could not find generic directions for coverage check".into()));
        }

        Ok(Arc::new(Fan { rank, rays, max_cones: cones, name, faces: OnceCell::new(), hash: OnceCell::new() }))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn rays(&self) -> &[Vec<BigInt>] {
        &self.rays
    }
    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }
    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }
    pub fn name(&self) -> &str {
        &self.name
    }

    /// All cones of the fan as sorted ray-index sets (including the origin
    /// as the empty set).  Smooth cones are simplicial, so faces are
    /// exactly the subsets of maximal cones.
    pub fn faces(&self) -> &BTreeSet<Vec<usize>> {
        self.faces.get_or_init(|| {
            let mut out = BTreeSet::new();
            for c in &self.max_cones {
                let k = c.len();
                for mask in 0u32..(1 << k) {
                    let f: Vec<usize> =
                        (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| c[i]).collect();
                    out.insert(f);
                }
            }
            out
        })
    }

    pub fn is_face(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.faces().contains(&s)
    }

    /// Number of cones in each dimension, `f[k]` = cones of dimension k.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0usize; self.rank + 1];
        for c in self.faces() {
            f[c.len()] += 1;
        }
        f
    }

    /// Stable content hash (hex), used as the cohomology cache key.
    pub fn hash_hex(&self) -> &str {
        self.hash.get_or_init(|| {
            let mut h = Sha256::new();
            h.update(format!("rank:{};", self.rank));
            for r in &self.rays {
                let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                h.update(s.join(","));
                h.update(";");
            }
            h.update("|");
            for c in &self.max_cones {
                let s: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                h.update(s.join(","));
                h.update(";");
            }
            let digest = h.finalize();
            digest.iter().map(|b| format!("{b:02x}")).collect()
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.rank,
            "rays": self.rays.iter().map(|r| {
                r.iter().map(big_to_json).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
            "max_cones": self.max_cones,
            "name": self.name,
        })
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Arc<Fan>> {
        let obj = v.as_object().ok_or_else(|| Error::Usage("fan JSON must be an object".into()))?;
        let rank = obj
            .get("rank")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Usage("fan JSON needs integer field 'rank'".into()))?
            as usize;
        let rays_v = obj
            .get("rays")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Usage("fan JSON needs array field 'rays'".into()))?;
        let mut rays = Vec::with_capacity(rays_v.len());
        for r in rays_v {
            let arr = r.as_array().ok_or_else(|| Error::Usage("each ray must be an array".into()))?;
            let mut ray = Vec::with_capacity(arr.len());
            for x in arr {
                ray.push(json_to_big(x)?);
            }
            rays.push(ray);
        }
        let cones_v = obj
            .get("max_cones")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Usage("fan JSON needs array field 'max_cones'".into()))?;
        let mut cones = Vec::with_capacity(cones_v.len());
        for c in cones_v {
            let arr = c.as_array().ok_or_else(|| Error::Usage("each cone must be an array".into()))?;
            let mut cone = Vec::with_capacity(arr.len());
            for x in arr {
                cone.push(
                    x.as_u64().ok_or_else(|| Error::Usage("cone entries must be ray indices".into()))?
                        as usize,
                );
            }
            cones.push(cone);
        }
        let name = obj.get("name").and_then(|x| x.as_str()).unwrap_or("fan").to_string();
        Fan::build(rank, rays, cones, name)
    }
}

pub fn big_to_json(x: &BigInt) -> serde_json::Value {
    // Numbers beyond the double-exact range are emitted as decimal strings.
    if let Ok(v) = i64::try_from(x.clone()) {
        if v.abs() < (1i64 << 53) {
            return serde_json::json!(v);
        }
    }
    serde_json::json!(x.to_string())
}

pub fn json_to_big(v: &serde_json::Value) -> Result<BigInt> {
    if let Some(i) = v.as_i64() {
        return Ok(BigInt::from(i));
    }
    if let Some(u) = v.as_u64() {
        return Ok(BigInt::from(u));
    }
    if let Some(s) = v.as_str() {
        return s
            .parse::<BigInt>()
            .map_err(|_| Error::Usage(format!("cannot parse integer from string '{s}'")));
    }
    Err(Error::Usage(format!(
        "expected an integer (number or decimal string), got {v}; quote values beyond 2^53"
    )))
}

/// Coordinates of `v` in the ray basis of a smooth maximal cone, or `None`
/// if the solve is singular (never for validated fans).
fn cone_coords(rays: &[Vec<BigInt>], cone: &[usize], v: &[BigInt]) -> Option<Vec<BigRational>> {
    // Solve sum_i x_i u_{cone[i]} = v, i.e. transpose system.
    let n = v.len();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|coord| {
            cone.iter()
                .map(|&ri| BigRational::from_integer(rays[ri][coord].clone()))
                .collect()
        })
        .collect();
    let b: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    solve_square_rational(&a, &b)
}

/// Coordinates of `v` in a full unimodular basis given by ray indices plus
/// explicit extra vectors; panics if non-integral (callers pass Z-bases).
fn basis_coords_int(basis: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    let n = v.len();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|coord| basis.iter().map(|u| BigRational::from_integer(u[coord].clone())).collect())
        .collect();
    let b: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    let x = solve_square_rational(&a, &b).expect("unimodular basis solve");
    x.into_iter()
        .map(|q| {
            assert!(q.is_integer(), "non-integral coordinate in unimodular basis");
            q.to_integer()
        })
        .collect()
}

pub fn product_fan(a: &Arc<Fan>, b: &Arc<Fan>) -> Result<Arc<Fan>> {
    let rank = a.rank() + b.rank();
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for r in a.rays() {
        let mut v = r.clone();
        v.extend(std::iter::repeat(BigInt::zero()).take(b.rank()));
        rays.push(v);
    }
    for r in b.rays() {
        let mut v: Vec<BigInt> = std::iter::repeat(BigInt::zero()).take(a.rank()).collect();
        v.extend(r.iter().cloned());
        rays.push(v);
    }
    let off = a.n_rays();
    let mut cones = Vec::new();
    for ca in a.max_cones() {
        for cb in b.max_cones() {
            let mut c = ca.clone();
            c.extend(cb.iter().map(|&i| i + off));
            cones.push(c);
        }
    }
    Fan::build(rank, rays, cones, format!("{} x {}", a.name(), b.name()))
}

/// Fan of P(O + O(D)) over `base`, where `D = sum a_rho D_rho` is given by
/// its coefficient vector.  Base rays lift to (u_rho, a_rho); two poles
/// (0,...,0,±1) are appended, and every base maximal cone spawns one cone
/// with each pole.  With this convention the tautological O(1) is the
/// prime divisor of the (0,...,0,-1) pole.
pub fn projectivized_split_bundle_fan(base: &Arc<Fan>, twist: &[BigInt]) -> Result<Arc<Fan>> {
    if twist.len() != base.n_rays() {
        return Err(Error::Usage(format!(
            "twist has {} coefficients, base fan has {} rays",
            twist.len(),
            base.n_rays()
        )));
    }
    let rank = base.rank() + 1;
    let mut rays: Vec<Vec<BigInt>> = Vec::new();
    for (r, a) in base.rays().iter().zip(twist.iter()) {
        let mut v = r.clone();
        v.push(a.clone());
        rays.push(v);
    }
    let mut plus: Vec<BigInt> = std::iter::repeat(BigInt::zero()).take(base.rank()).collect();
    plus.push(BigInt::from(1));
    let mut minus: Vec<BigInt> = std::iter::repeat(BigInt::zero()).take(base.rank()).collect();
    minus.push(BigInt::from(-1));
    let i_plus = rays.len();
    rays.push(plus);
    let i_minus = rays.len();
    rays.push(minus);
    let mut cones = Vec::new();
    for c in base.max_cones() {
        let mut cp = c.clone();
        cp.push(i_plus);
        cones.push(cp);
        let mut cm = c.clone();
        cm.push(i_minus);
        cones.push(cm);
    }
    Fan::build(rank, rays, cones, format!("P(O+O(tw)) over {}", base.name()))
}

/// Orbit closure V(tau): the parent cone, its star quotient fan, and the
/// map from adjacent parent rays to quotient rays.
#[derive(Debug, Clone)]
pub struct OrbitClosure {
    pub tau: Vec<usize>,
    pub fan: Arc<Fan>,
    pub ray_map: BTreeMap<usize, usize>,
    pub parent_hash: String,
}

/// All orbit closures of dimension `d`, i.e. stars of cones of
/// codimension `d`... of dimension rank - d.
pub fn orbit_closures(fan: &Arc<Fan>, d: usize) -> Result<Vec<OrbitClosure>> {
    let n = fan.rank();
    if d > n {
        return Err(Error::Usage(format!("orbit dimension {d} exceeds fan rank {n}")));
    }
    let codim = n - d;
    let taus: Vec<Vec<usize>> = fan.faces().iter().filter(|f| f.len() == codim).cloned().collect();
    let mut out = Vec::new();
    for tau in taus {
        out.push(orbit_closure(fan, &tau)?);
    }
    Ok(out)
}

pub fn orbit_closure(fan: &Arc<Fan>, tau: &[usize]) -> Result<OrbitClosure> {
    if !fan.is_face(tau) {
        return Err(Error::Usage(format!("{tau:?} is not a cone of the fan")));
    }
    let mut tau: Vec<usize> = tau.to_vec();
    tau.sort_unstable();
    if tau.is_empty() {
        let ray_map = (0..fan.n_rays()).map(|i| (i, i)).collect();
        return Ok(OrbitClosure {
            tau,
            fan: fan.clone(),
            ray_map,
            parent_hash: fan.hash_hex().to_string(),
        });
    }
    let n = fan.rank();
    let k = tau.len();
    // Extend tau's rays to a Z-basis using any containing maximal cone.
    let sigma0 = fan
        .max_cones()
        .iter()
        .find(|c| tau.iter().all(|t| c.contains(t)))
        .expect("face of some maximal cone");
    let mut basis: Vec<Vec<BigInt>> = tau.iter().map(|&i| fan.rays()[i].clone()).collect();
    for &i in sigma0 {
        if !tau.contains(&i) {
            basis.push(fan.rays()[i].clone());
        }
    }
    let project = |v: &[BigInt]| -> Vec<BigInt> {
        let coords = basis_coords_int(&basis, v);
        coords[k..].to_vec()
    };
    // Adjacent rays: tau + ray is a cone of the fan.
    let mut ray_map = BTreeMap::new();
    let mut qrays: Vec<Vec<BigInt>> = Vec::new();
    for ri in 0..fan.n_rays() {
        if tau.contains(&ri) {
            continue;
        }
        let mut ext = tau.clone();
        ext.push(ri);
        if !fan.is_face(&ext) {
            continue;
        }
        let img = project(&fan.rays()[ri]);
        if !is_primitive(&img) {
            return Err(Error::Internal(format!(
                "star quotient of a smooth fan produced non-primitive ray {img:?}"
            )));
        }
        if let Some(pos) = qrays.iter().position(|q| *q == img) {
            // Two adjacent rays projecting to the same quotient ray would
            // break the star fan; smooth complete fans never do this.
            return Err(Error::Internal(format!(
                "rays {ri} and quotient ray {pos} collide in the star of {tau:?}"
            )));
        }
        ray_map.insert(ri, qrays.len());
        qrays.push(img);
    }
    let mut qcones = Vec::new();
    for c in fan.max_cones() {
        if !tau.iter().all(|t| c.contains(t)) {
            continue;
        }
        let qc: Vec<usize> =
            c.iter().filter(|i| !tau.contains(i)).map(|i| ray_map[i]).collect();
        qcones.push(qc);
    }
    let qfan = Fan::build(
        n - k,
        qrays,
        qcones,
        format!("{}/V({:?})", fan.name(), tau),
    )?;
    Ok(OrbitClosure { tau, fan: qfan, ray_map, parent_hash: fan.hash_hex().to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn p1() -> Arc<Fan> {
        Fan::build(
            1,
            vec![vec![BigInt::from(1)], vec![BigInt::from(-1)]],
            vec![vec![0], vec![1]],
            "P1",
        )
        .unwrap()
    }

    fn p2() -> Arc<Fan> {
        Fan::build(
            2,
            vec![
                vec![1.into(), 0.into()],
                vec![0.into(), 1.into()],
                vec![(-1).into(), (-1).into()],
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
            "P2",
        )
        .unwrap()
    }

    #[test]
    fn p1_f_vector() {
        assert_eq!(p1().f_vector(), vec![1, 2]);
    }

    #[test]
    fn p2_f_vector() {
        assert_eq!(p2().f_vector(), vec![1, 3, 3]);
    }

    #[test]
    fn product_f_vector_is_convolution() {
        let a = p1();
        let b = p2();
        let prod = product_fan(&a, &b).unwrap();
        let fa = a.f_vector();
        let fb = b.f_vector();
        let fp = prod.f_vector();
        for k in 0..fp.len() {
            let expect: usize = (0..=k)
                .map(|i| fa.get(i).copied().unwrap_or(0) * fb.get(k - i).copied().unwrap_or(0))
                .sum();
            assert_eq!(fp[k], expect, "f-vector mismatch in dimension {k}");
        }
    }

    #[test]
    fn p1_times_p1_is_split_bundle_with_zero_twist() {
        let base = p1();
        let bundle =
            projectivized_split_bundle_fan(&base, &[BigInt::zero(), BigInt::zero()]).unwrap();
        let square = product_fan(&base, &base).unwrap();
        assert_eq!(bundle.f_vector(), square.f_vector());
        // Same ray set up to order.
        let mut a: Vec<_> = bundle.rays().to_vec();
        let mut b: Vec<_> = square.rays().to_vec();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn hirzebruch_from_twisted_bundle_is_smooth_complete() {
        // P(O + O(-1)) over P1 is the first Hirzebruch surface.
        let base = p1();
        let f1 = projectivized_split_bundle_fan(&base, &[BigInt::from(-1), BigInt::zero()]).unwrap();
        assert_eq!(f1.f_vector(), vec![1, 4, 4]);
    }

    #[test]
    fn incomplete_fan_rejected() {
        let err = Fan::build(
            2,
            vec![vec![1.into(), 0.into()], vec![0.into(), 1.into()]],
            vec![vec![0, 1]],
            "A2",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotComplete(_)), "{err}");
    }

    #[test]
    fn singular_cone_rejected() {
        // Quadric cone: rays (1,0),(1,2) have determinant 2.
        let err = Fan::build(
            2,
            vec![
                vec![1.into(), 0.into()],
                vec![1.into(), 2.into()],
                vec![(-1).into(), (-1).into()],
                vec![0.into(), (-1).into()],
            ],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
            "sing",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotSmooth { .. }), "{err}");
    }

    #[test]
    fn non_primitive_ray_rejected() {
        let err = Fan::build(
            1,
            vec![vec![2.into()], vec![(-1).into()]],
            vec![vec![0], vec![1]],
            "bad",
        )
        .unwrap_err();
        assert!(matches!(err, Error::NonPrimitiveRay { .. }), "{err}");
    }

    #[test]
    fn malformed_cone_list_rejected() {
        let err = Fan::build(
            2,
            vec![
                vec![1.into(), 0.into()],
                vec![0.into(), 1.into()],
                vec![(-1).into(), (-1).into()],
            ],
            vec![vec![0], vec![2, 1]],
            "bad",
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadFaceStructure(_)), "{err}");
    }

    #[test]
    fn overlapping_cones_rejected() {
        // Ray (1,1) sits inside cone((1,0),(0,1)): face structure violated.
        let err = Fan::build(
            2,
            vec![
                vec![1.into(), 0.into()],
                vec![0.into(), 1.into()],
                vec![1.into(), 1.into()],
                vec![(-1).into(), (-1).into()],
            ],
            vec![vec![0, 1], vec![0, 2], vec![1, 3], vec![3, 0]],
            "bad",
        )
        .unwrap_err();
        assert!(matches!(err, Error::BadFaceStructure(_) | Error::NotComplete(_)), "{err}");
    }

    #[test]
    fn orbit_closures_of_top_dimension_is_self() {
        let f = p2();
        let ocs = orbit_closures(&f, 2).unwrap();
        assert_eq!(ocs.len(), 1);
        assert_eq!(*ocs[0].fan, *f);
        assert_eq!(ocs[0].ray_map.len(), 3);
    }

    #[test]
    fn p2_ray_stars_are_p1() {
        let f = p2();
        let ocs = orbit_closures(&f, 1).unwrap();
        assert_eq!(ocs.len(), 3);
        for oc in &ocs {
            assert_eq!(oc.fan.f_vector(), vec![1, 2], "star of a ray in P2 is a P1");
        }
    }

    #[test]
    fn fan_hash_stable_and_sensitive() {
        let a = p2();
        let b = p2();
        assert_eq!(a.hash_hex(), b.hash_hex());
        assert_ne!(p1().hash_hex(), a.hash_hex());
    }

    #[test]
    fn json_round_trip() {
        let f = p2();
        let v = f.to_json();
        let g = Fan::from_json_value(&v).unwrap();
        assert_eq!(*f, *g);
    }

    #[test]
    fn json_accepts_string_integers() {
        let v = serde_json::json!({
            "rank": 1,
            "rays": [["1"], ["-1"]],
            "max_cones": [[0], [1]],
            "name": "P1"
        });
        let f = Fan::from_json_value(&v).unwrap();
        assert_eq!(f.n_rays(), 2);
    }
}
