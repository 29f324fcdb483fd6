use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::featurex::FeatureMatrix;
use crate::rng;

/// Partitions item indices into (train, test) by class.
///
/// Each class contributes `round(n_c * (1 - ratio))` test items, clamped to
/// `[1, n_c - 1]`. Classes are visited in code order with one shared RNG
/// stream, and both outputs are returned in ascending index order.
pub fn stratified_partition(
    labels: &[usize],
    class_names: &[String],
    ratio: f64,
    seed: u64,
) -> Result<(Vec<usize>, Vec<usize>)> {
    check_ratio(ratio)?;
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); class_names.len()];
    for (i, &l) in labels.iter().enumerate() {
        by_class[l].push(i);
    }
    let mut rng = rng::derived_rng(seed, "stratified-split", 0);
    let mut train = Vec::new();
    let mut test = Vec::new();
    for (c, mut members) in by_class.into_iter().enumerate() {
        let n = members.len();
        if n == 0 {
            continue;
        }
        if n < 2 {
            return Err(Error::ClassTooSmall {
                class: class_names[c].clone(),
                count: n,
                needed: 2,
            });
        }
        let n_test = ((n as f64 * (1.0 - ratio)).round() as usize).clamp(1, n - 1);
        members.shuffle(&mut rng);
        test.extend_from_slice(&members[..n_test]);
        train.extend_from_slice(&members[n_test..]);
    }
    train.sort_unstable();
    test.sort_unstable();
    Ok((train, test))
}

fn check_ratio(ratio: f64) -> Result<()> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Invalid(format!("train ratio {ratio} must lie in (0, 1)")));
    }
    Ok(())
}

/// Splits rows into (train, test) with `ratio` of rows in train.
pub fn split_train_test(
    rows: &FeatureMatrix,
    ratio: f64,
    seed: u64,
    stratify: bool,
) -> Result<(FeatureMatrix, FeatureMatrix)> {
    let (train, test) = if stratify {
        stratified_partition(rows.labels(), rows.classes(), ratio, seed)?
    } else {
        check_ratio(ratio)?;
        let n = rows.n_rows();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(&mut rng::derived_rng(seed, "plain-split", 0));
        let n_test = (n as f64 * (1.0 - ratio)).round() as usize;
        let (mut test, mut train) = (idx[..n_test].to_vec(), idx[n_test..].to_vec());
        train.sort_unstable();
        test.sort_unstable();
        (train, test)
    };
    Ok((rows.select_rows(&train), rows.select_rows(&test)))
}

/// Reduces every class to the minority-class count by seeded sampling
/// without replacement. Output rows keep their original relative order.
pub fn undersample_balance(rows: &FeatureMatrix, seed: u64) -> Result<FeatureMatrix> {
    if rows.is_empty() {
        return Err(Error::Invalid("cannot balance an empty matrix".into()));
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); rows.n_classes()];
    for (i, &l) in rows.labels().iter().enumerate() {
        by_class[l].push(i);
    }
    let target = by_class.iter().map(Vec::len).filter(|&n| n > 0).min().unwrap();
    let mut rng = rng::derived_rng(seed, "undersample", 0);
    let mut keep = Vec::with_capacity(target * by_class.len());
    for members in &by_class {
        if members.is_empty() {
            continue;
        }
        keep.extend(members.choose_multiple(&mut rng, target).copied());
    }
    keep.sort_unstable();
    Ok(rows.select_rows(&keep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::featurex::MatrixBuilder;

    fn matrix(counts: &[(&str, usize)]) -> FeatureMatrix {
        let mut b = MatrixBuilder::new(vec!["x".into()]);
        let mut k = 0;
        for &(label, n) in counts {
            for _ in 0..n {
                b.push(&[k as f64], label, &format!("t{k}"), 0);
                k += 1;
            }
        }
        b.finish()
    }

    fn values(m: &FeatureMatrix) -> Vec<f64> {
        m.column(0).collect()
    }

    #[test]
    fn ten_rows_two_classes() {
        let m = matrix(&[("a", 5), ("b", 5)]);
        let (train, test) = split_train_test(&m, 0.8, 1, true).unwrap();
        assert_eq!(train.n_rows(), 8);
        assert_eq!(test.class_counts(), vec![1, 1]);
    }

    #[test]
    fn split_is_deterministic() {
        let m = matrix(&[("a", 13), ("b", 9)]);
        let (a1, b1) = split_train_test(&m, 0.8, 9, true).unwrap();
        let (a2, b2) = split_train_test(&m, 0.8, 9, true).unwrap();
        assert_eq!(a1, a2);
        assert_eq!(b1, b2);
        let (_, b3) = split_train_test(&m, 0.8, 10, true).unwrap();
        assert_ne!(values(&b1), values(&b3));
    }

    #[test]
    fn proportional_test_counts() {
        // per-class test counts by enumeration: 20% of 40/30/20/10
        let m = matrix(&[("a", 40), ("b", 30), ("c", 20), ("d", 10)]);
        let expected: Vec<usize> = [40usize, 30, 20, 10].iter().map(|n| n / 5).collect();
        let (_, test) = split_train_test(&m, 0.8, 3, true).unwrap();
        assert_eq!(test.class_counts(), expected);
    }

    #[test]
    fn singleton_class_named_in_error() {
        let m = matrix(&[("a", 5), ("lonely", 1)]);
        match split_train_test(&m, 0.8, 0, true) {
            Err(Error::ClassTooSmall { class, .. }) => assert_eq!(class, "lonely"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unstratified_split_partitions() {
        let m = matrix(&[("a", 7), ("b", 3)]);
        let (train, test) = split_train_test(&m, 0.7, 5, false).unwrap();
        assert_eq!((train.n_rows(), test.n_rows()), (7, 3));
    }

    #[test]
    fn balance_examples() {
        let m = matrix(&[("a", 5), ("b", 5)]);
        assert_eq!(undersample_balance(&m, 1).unwrap().class_counts(), vec![5, 5]);
        let m = matrix(&[("a", 10), ("b", 4)]);
        assert_eq!(undersample_balance(&m, 1).unwrap().class_counts(), vec![4, 4]);
        let m = matrix(&[("a", 7), ("b", 3), ("c", 3)]);
        let x = undersample_balance(&m, 1).unwrap();
        let y = undersample_balance(&m, 2).unwrap();
        assert_eq!(x.class_counts(), vec![3, 3, 3]);
        assert_eq!(y.class_counts(), vec![3, 3, 3]);
        assert!(undersample_balance(&matrix(&[]), 0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn split_partitions_rows(counts in proptest::collection::vec(2usize..30, 1..5), seed: u64, ratio in 0.3f64..0.9) {
                let labels: Vec<(String, usize)> = counts.iter().enumerate().map(|(i, &n)| (format!("c{i}"), n)).collect();
                let refs: Vec<(&str, usize)> = labels.iter().map(|(l, n)| (l.as_str(), *n)).collect();
                let m = matrix(&refs);
                let (train, test) = split_train_test(&m, ratio, seed, true).unwrap();
                let mut all: Vec<f64> = values(&train).into_iter().chain(values(&test)).collect();
                all.sort_by(f64::total_cmp);
                prop_assert_eq!(all, values(&m));
                for (c, &n) in counts.iter().enumerate() {
                    let want = n as f64 * (1.0 - ratio);
                    prop_assert!((test.class_counts()[c] as f64 - want).abs() <= 1.0);
                }
            }

            #[test]
            fn balance_is_uniform_at_minimum(counts in proptest::collection::vec(1usize..25, 1..5), seed: u64) {
                let labels: Vec<(String, usize)> = counts.iter().enumerate().map(|(i, &n)| (format!("c{i}"), n)).collect();
                let refs: Vec<(&str, usize)> = labels.iter().map(|(l, n)| (l.as_str(), *n)).collect();
                let out = undersample_balance(&matrix(&refs), seed).unwrap();
                let min = *counts.iter().min().unwrap();
                prop_assert!(out.class_counts().iter().all(|&c| c == min));
            }
        }
    }
}
