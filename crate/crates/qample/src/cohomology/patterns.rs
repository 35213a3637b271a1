//! Reduced Betti numbers of the ray-pattern complexes, memoized per fan.
//!
//! For a subset S of rays the complex V_S has the rays of S as vertices
//! and the cone-spanning subsets as faces.  The weight contributes to
//! h^i with multiplicity dim H~^{i-1}(V_S), so the returned vector is
//! indexed by cohomological degree directly (entry i = reduced Betti in
//! simplicial dimension i-1; the empty complex contributes to h^0).

use crate::field::{Gf, Rat};
use crate::lattice::Fan;
use crate::linalg::Mat;
use dashmap::DashMap;
use std::sync::Arc;

pub struct PatternStore {
    face_masks: DashMap<String, Arc<Vec<u64>>>,
    betti: DashMap<(String, u64, u64), Arc<Vec<u64>>>,
}

impl PatternStore {
    pub fn new() -> Self {
        PatternStore { face_masks: DashMap::new(), betti: DashMap::new() }
    }

    fn face_masks_of(&self, fan: &Arc<Fan>) -> Arc<Vec<u64>> {
        let key = fan.hash_hex().to_string();
        if let Some(v) = self.face_masks.get(&key) {
            return v.clone();
        }
        let masks: Vec<u64> = fan
            .faces()
            .iter()
            .map(|f| f.iter().fold(0u64, |m, &i| m | 1 << i))
            .collect();
        let arc = Arc::new(masks);
        self.face_masks.insert(key, arc.clone());
        arc
    }

    /// `p = None` computes over the rationals (char-0 Betti numbers).
    pub fn betti(&self, fan: &Arc<Fan>, mask: u64, p: Option<u64>) -> Arc<Vec<u64>> {
        let pk = p.unwrap_or(0);
        let key = (fan.hash_hex().to_string(), mask, pk);
        if let Some(v) = self.betti.get(&key) {
            return v.clone();
        }
        let value = Arc::new(self.compute(fan, mask, p));
        self.betti.insert(key, value.clone());
        value
    }

    fn compute(&self, fan: &Arc<Fan>, mask: u64, p: Option<u64>) -> Vec<u64> {
        let n = fan.rank();
        let all = self.face_masks_of(fan);
        // Faces inside the pattern, grouped by cardinality; the empty face
        // is kept so the complex is reduced.
        let mut by_card: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
        for &f in all.iter() {
            if f & !mask == 0 {
                by_card[f.count_ones() as usize].push(f);
            }
        }
        for v in by_card.iter_mut() {
            v.sort_unstable();
        }
        // Boundary matrices d_c: C_c -> C_{c-1}; rank over the field.
        let mut ranks = vec![0usize; n + 2];
        for c in 1..=n {
            if by_card[c].is_empty() || by_card[c - 1].is_empty() {
                continue;
            }
            let cols = by_card[c - 1].len();
            let col_of: std::collections::HashMap<u64, usize> =
                by_card[c - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
            // Entries live in {-1, 0, 1}; assemble integer rows once.
            let mut int_rows: Vec<Vec<i64>> = Vec::with_capacity(by_card[c].len());
            for &f in &by_card[c] {
                let mut row = vec![0i64; cols];
                let verts: Vec<u32> = (0..64).filter(|&b| f >> b & 1 == 1).collect();
                for (pos, &b) in verts.iter().enumerate() {
                    let sub = f & !(1 << b);
                    let j = col_of[&sub];
                    row[j] = if pos % 2 == 0 { 1 } else { -1 };
                }
                int_rows.push(row);
            }
            ranks[c] = match p {
                None => {
                    let rows: Vec<Vec<Rat>> = int_rows
                        .iter()
                        .map(|r| r.iter().map(|&x| Rat::from_i64(x)).collect())
                        .collect();
                    Mat::new(rows, cols).rank()
                }
                Some(p) => {
                    let rows: Vec<Vec<Gf>> = int_rows
                        .iter()
                        .map(|r| r.iter().map(|&x| Gf::new(x, p)).collect())
                        .collect();
                    Mat::new(rows, cols).rank()
                }
            };
        }
        // Contribution to h^i = dim C_i - rank d_i - rank d_{i+1}
        // (C_i = faces of cardinality i; C_0 is the empty face).
        let mut out = vec![0u64; n + 1];
        for i in 0..=n {
            let dim_ci = by_card[i].len();
            let r_in = ranks[i];
            let r_out = if i + 1 <= n { ranks[i + 1] } else { 0 };
            out[i] = (dim_ci - r_in - r_out) as u64;
        }
        out
    }
}
