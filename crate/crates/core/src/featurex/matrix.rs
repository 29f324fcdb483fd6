use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Fixed-width named feature rows with per-row class labels and provenance.
///
/// Data is stored row-major. Labels are codes into `classes`, which keeps
/// the full class list even when a subset of rows omits a class, so splits
/// of one matrix share class indices.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    names: Arc<[String]>,
    data: Vec<f64>,
    labels: Vec<usize>,
    classes: Arc<[String]>,
    trip_ids: Arc<[String]>,
    trip_of: Vec<u32>,
    window_idx: Vec<u32>,
}

/// Orders class names numerically when every name parses as a number,
/// lexicographically otherwise.
pub fn sort_class_names(names: &mut [String]) {
    let numeric: Option<Vec<f64>> = names.iter().map(|n| n.parse::<f64>().ok()).collect();
    if numeric.is_some() {
        names.sort_by(|a, b| {
            let (x, y) = (a.parse::<f64>().unwrap(), b.parse::<f64>().unwrap());
            x.total_cmp(&y).then_with(|| a.cmp(b))
        });
    } else {
        names.sort();
    }
}

/// Incremental builder keyed by label strings and trip ids.
#[derive(Debug, Default)]
pub struct MatrixBuilder {
    names: Vec<String>,
    data: Vec<f64>,
    labels: Vec<String>,
    trips: Vec<String>,
    window_idx: Vec<u32>,
}

impl MatrixBuilder {
    pub fn new(names: Vec<String>) -> Self {
        MatrixBuilder {
            names,
            ..Default::default()
        }
    }

    pub fn push(&mut self, values: &[f64], label: &str, trip_id: &str, window: usize) {
        assert_eq!(values.len(), self.names.len(), "row width");
        self.data.extend_from_slice(values);
        self.labels.push(label.to_string());
        self.trips.push(trip_id.to_string());
        self.window_idx.push(window as u32);
    }

    /// Appends every row of another builder with the same names.
    pub fn extend(&mut self, other: MatrixBuilder) {
        assert_eq!(self.names, other.names, "column names");
        self.data.extend(other.data);
        self.labels.extend(other.labels);
        self.trips.extend(other.trips);
        self.window_idx.extend(other.window_idx);
    }

    pub fn finish(self) -> FeatureMatrix {
        let mut classes: Vec<String> = self.labels.clone();
        classes.sort();
        classes.dedup();
        sort_class_names(&mut classes);
        let class_idx: HashMap<&str, usize> = classes.iter().enumerate().map(|(i, c)| (c.as_str(), i)).collect();
        let labels = self.labels.iter().map(|l| class_idx[l.as_str()]).collect();

        let mut trip_ids: Vec<String> = Vec::new();
        let mut trip_idx: HashMap<&str, u32> = HashMap::new();
        let mut trip_of = Vec::with_capacity(self.trips.len());
        for t in &self.trips {
            let next = trip_ids.len() as u32;
            let i = *trip_idx.entry(t.as_str()).or_insert_with(|| {
                trip_ids.push(t.clone());
                next
            });
            trip_of.push(i);
        }
        FeatureMatrix {
            names: self.names.into(),
            data: self.data,
            labels,
            classes: classes.into(),
            trip_ids: trip_ids.into(),
            trip_of,
            window_idx: self.window_idx,
        }
    }
}

impl FeatureMatrix {
    /// Builds a matrix from row-major values and explicit class codes.
    /// Provenance defaults to one pseudo-trip per row (`row<i>`, window 0).
    pub fn from_codes(names: Vec<String>, data: Vec<f64>, labels: Vec<usize>, classes: Vec<String>) -> Result<Self> {
        let d = names.len();
        if d == 0 && !data.is_empty() {
            return Err(Error::Invalid("data without columns".into()));
        }
        let n = data.len().checked_div(d).unwrap_or(labels.len());
        if d > 0 && data.len() != n * d {
            return Err(Error::Invalid(format!(
                "{} values do not fill rows of width {d}",
                data.len()
            )));
        }
        if labels.len() != n {
            return Err(Error::Invalid(format!("{} labels for {n} rows", labels.len())));
        }
        if let Some(&bad) = labels.iter().find(|&&l| l >= classes.len()) {
            return Err(Error::Invalid(format!("label code {bad} out of range")));
        }
        Ok(FeatureMatrix {
            names: names.into(),
            data,
            labels,
            classes: classes.into(),
            trip_ids: (0..n).map(|i| format!("row{i}")).collect::<Vec<_>>().into(),
            trip_of: (0..n as u32).collect(),
            window_idx: vec![0; n],
        })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let d = self.n_cols();
        &self.data[i * d..(i + 1) * d]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.n_rows()).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        let d = self.n_cols();
        self.data.iter().skip(j).step_by(d.max(1)).copied().take(self.n_rows())
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label_name(&self, i: usize) -> &str {
        &self.classes[self.labels[i]]
    }

    pub fn trip_id(&self, i: usize) -> &str {
        &self.trip_ids[self.trip_of[i] as usize]
    }

    /// Index of the row's trip among this matrix's distinct trips.
    pub fn trip_index(&self, i: usize) -> usize {
        self.trip_of[i] as usize
    }

    pub fn n_trips(&self) -> usize {
        self.trip_ids.len()
    }

    pub fn window_index(&self, i: usize) -> usize {
        self.window_idx[i] as usize
    }

    /// Row counts per class code (length = `n_classes`).
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n_classes()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Row counts per class name for classes with at least one row.
    pub fn class_histogram(&self) -> BTreeMap<String, usize> {
        self.class_counts()
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, c)| (self.classes[i].clone(), c))
            .collect()
    }

    pub fn classes_present(&self) -> usize {
        self.class_counts().iter().filter(|&&c| c > 0).count()
    }

    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Rows at `indices`, in the given order. Classes and trip table are shared.
    pub fn select_rows(&self, indices: &[usize]) -> FeatureMatrix {
        let d = self.n_cols();
        let mut data = Vec::with_capacity(indices.len() * d);
        for &i in indices {
            data.extend_from_slice(self.row(i));
        }
        FeatureMatrix {
            names: self.names.clone(),
            data,
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
            classes: self.classes.clone(),
            trip_ids: self.trip_ids.clone(),
            trip_of: indices.iter().map(|&i| self.trip_of[i]).collect(),
            window_idx: indices.iter().map(|&i| self.window_idx[i]).collect(),
        }
    }

    /// Columns at `indices`, in the given order.
    pub fn select_columns(&self, indices: &[usize]) -> FeatureMatrix {
        let mut data = Vec::with_capacity(self.n_rows() * indices.len());
        for row in self.rows() {
            data.extend(indices.iter().map(|&j| row[j]));
        }
        FeatureMatrix {
            names: indices
                .iter()
                .map(|&j| self.names[j].clone())
                .collect::<Vec<_>>()
                .into(),
            data,
            ..self.clone_without_data()
        }
    }

    /// Columns by name, failing on any unknown name.
    pub fn select_named(&self, names: &[String]) -> Result<FeatureMatrix> {
        let idx: HashMap<&str, usize> = self.names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let cols = names
            .iter()
            .map(|n| {
                idx.get(n.as_str())
                    .copied()
                    .ok_or_else(|| Error::Invalid(format!("unknown feature `{n}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.select_columns(&cols))
    }

    /// Same rows with labels replaced by `labels` (codes into the same classes).
    pub fn with_labels(&self, labels: Vec<usize>) -> FeatureMatrix {
        assert_eq!(labels.len(), self.n_rows());
        FeatureMatrix { labels, ..self.clone() }
    }

    fn clone_without_data(&self) -> FeatureMatrix {
        FeatureMatrix {
            names: self.names.clone(),
            data: Vec::new(),
            labels: self.labels.clone(),
            classes: self.classes.clone(),
            trip_ids: self.trip_ids.clone(),
            trip_of: self.trip_of.clone(),
            window_idx: self.window_idx.clone(),
        }
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    /// Writes the matrix as CSV: feature columns then `label,trip_id,window_idx`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<&str> = self.names.iter().map(String::as_str).collect();
        header.extend(["label", "trip_id", "window_idx"]);
        w.write_record(&header)?;
        for i in 0..self.n_rows() {
            let mut rec: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            rec.push(self.label_name(i).to_string());
            rec.push(self.trip_id(i).to_string());
            rec.push(self.window_index(i).to_string());
            w.write_record(&rec)?;
        }
        w.flush()
            .map_err(|e| Error::Invalid(format!("flushing matrix CSV: {e}")))?;
        Ok(())
    }
}
