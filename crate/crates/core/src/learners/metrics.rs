use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerClass {
    pub precision: Vec<f64>,
    pub recall: Vec<f64>,
    pub f1: Vec<f64>,
}

/// Confusion matrix (rows = true class, columns = predicted) and the
/// scores derived from it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub classes: Vec<String>,
    pub confusion: Vec<Vec<usize>>,
    pub accuracy: f64,
    pub macro_f1: f64,
    pub per_class: PerClass,
}

fn ratio(a: usize, b: usize) -> f64 {
    if b == 0 {
        0.0
    } else {
        a as f64 / b as f64
    }
}

/// Scores predictions against truth; both are codes into `classes`.
/// Classes absent from both still count towards the macro mean.
pub fn evaluate(y_true: &[usize], y_pred: &[usize], classes: &[String]) -> EvalReport {
    assert_eq!(y_true.len(), y_pred.len(), "prediction length");
    let n = classes.len();
    let mut confusion = vec![vec![0usize; n]; n];
    for (&t, &p) in y_true.iter().zip(y_pred) {
        confusion[t][p] += 1;
    }
    let correct: usize = (0..n).map(|i| confusion[i][i]).sum();
    let mut per = PerClass {
        precision: Vec::with_capacity(n),
        recall: Vec::with_capacity(n),
        f1: Vec::with_capacity(n),
    };
    for i in 0..n {
        let tp = confusion[i][i];
        let predicted: usize = (0..n).map(|r| confusion[r][i]).sum();
        let actual: usize = confusion[i].iter().sum();
        let p = ratio(tp, predicted);
        let r = ratio(tp, actual);
        per.precision.push(p);
        per.recall.push(r);
        per.f1.push(if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) });
    }
    let macro_f1 = if n == 0 {
        0.0
    } else {
        per.f1.iter().sum::<f64>() / n as f64
    };
    EvalReport {
        classes: classes.to_vec(),
        confusion,
        accuracy: ratio(correct, y_true.len()),
        macro_f1,
        per_class: per,
    }
}

impl EvalReport {
    pub fn support(&self) -> Vec<usize> {
        self.confusion.iter().map(|r| r.iter().sum()).collect()
    }
}
