use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::featurex::FeatureMatrix;
use crate::rng;

/// Per-class quotas summing to `target`, proportional to `counts` by
/// largest remainder. Classes whose share rounds below one row are pinned
/// at one and the rest is shared among the others.
fn quotas(counts: &[usize], target: usize) -> Vec<usize> {
    let mut pinned = vec![false; counts.len()];
    loop {
        let free: usize = (0..counts.len()).filter(|&c| !pinned[c]).map(|c| counts[c]).sum();
        let budget = target - pinned.iter().filter(|&&p| p).count();
        let exact: Vec<f64> = (0..counts.len())
            .map(|c| {
                if pinned[c] {
                    0.0
                } else {
                    counts[c] as f64 * budget as f64 / free as f64
                }
            })
            .collect();
        let newly: Vec<usize> = (0..counts.len())
            .filter(|&c| !pinned[c] && counts[c] > 0 && exact[c] < 1.0)
            .collect();
        if !newly.is_empty() {
            newly.into_iter().for_each(|c| pinned[c] = true);
            continue;
        }
        let mut q: Vec<usize> = (0..counts.len())
            .map(|c| if pinned[c] { 1 } else { exact[c].floor() as usize })
            .collect();
        let mut left = target - q.iter().sum::<usize>();
        let mut order: Vec<usize> = (0..counts.len()).filter(|&c| !pinned[c] && counts[c] > 0).collect();
        order.sort_by(|&a, &b| {
            (exact[b] - q[b] as f64)
                .total_cmp(&(exact[a] - q[a] as f64))
                .then(a.cmp(&b))
        });
        for &c in &order {
            if left == 0 {
                break;
            }
            q[c] += 1;
            left -= 1;
        }
        return q;
    }
}

/// Seeded subsample of `target` rows keeping class proportions.
pub fn stratified_reduce(rows: &FeatureMatrix, target: usize, seed: u64) -> Result<FeatureMatrix> {
    let n = rows.n_rows();
    if target > n {
        return Err(Error::Invalid(format!("cannot reduce {n} rows to {target}")));
    }
    let present = rows.classes_present();
    if target < present {
        return Err(Error::Invalid(format!(
            "target {target} is below the {present} classes present"
        )));
    }
    if target == n {
        return Ok(rows.clone());
    }
    let counts = rows.class_counts();
    let q = quotas(&counts, target);
    let mut by_class = vec![Vec::new(); counts.len()];
    for (i, &l) in rows.labels().iter().enumerate() {
        by_class[l].push(i);
    }
    let mut r = rng::derived_rng(seed, "stratified-reduce", 0);
    let mut keep = Vec::with_capacity(target);
    for (members, &k) in by_class.iter().zip(&q) {
        keep.extend(members.choose_multiple(&mut r, k).copied());
    }
    keep.sort_unstable();
    Ok(rows.select_rows(&keep))
}
