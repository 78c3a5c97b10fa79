use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::classical::ClassicalFileFacts;
use crate::error::MetricsError;

pub const DEFAULT_SHINGLE_SIZE: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedValue {
    pub name: String,
    pub value: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassicalMetricSet {
    pub path: String,
    pub function_complexities: Vec<NamedValue>,
    pub function_sizes: Vec<NamedValue>,
    pub comment_lines: usize,
    pub code_lines: usize,
    pub comment_density: f64,
    pub duplicate_token_ratio: f64,
}

/// McCabe value per function: decision points + 1.
pub fn cyclomatic(facts: &ClassicalFileFacts) -> Vec<NamedValue> {
    facts
        .functions
        .iter()
        .map(|f| NamedValue {
            name: f.name.clone(),
            value: f.decision_points + 1,
        })
        .collect()
}

pub fn method_sizes(facts: &ClassicalFileFacts) -> Vec<NamedValue> {
    facts
        .functions
        .iter()
        .map(|f| NamedValue {
            name: f.name.clone(),
            value: f.code_lines,
        })
        .collect()
}

/// `comment / (comment + code)`; blank lines are neutral. 0 when empty.
pub fn comment_density(facts: &ClassicalFileFacts) -> f64 {
    let denom = facts.comment_lines + facts.code_lines;
    if denom == 0 {
        0.0
    } else {
        facts.comment_lines as f64 / denom as f64
    }
}

/// Fraction of each file's token positions covered by a shingle whose
/// content occurs at least twice anywhere in the project (same file
/// included). Files shorter than one shingle score 0.
pub fn duplicate_ratio(
    all_facts: &[ClassicalFileFacts],
    shingle_size: usize,
) -> Result<Vec<f64>, MetricsError> {
    if shingle_size < 2 {
        return Err(MetricsError::InvalidShingleSize(shingle_size));
    }

    // Intern tokens so windows compare as integer slices.
    let mut vocab: HashMap<&str, u32> = HashMap::new();
    let streams: Vec<Vec<u32>> = all_facts
        .iter()
        .map(|f| {
            f.token_stream
                .iter()
                .map(|t| {
                    let next = vocab.len() as u32;
                    *vocab.entry(t.as_str()).or_insert(next)
                })
                .collect()
        })
        .collect();

    let mut occurrences: HashMap<&[u32], usize> = HashMap::new();
    for stream in &streams {
        for window in stream.windows(shingle_size) {
            *occurrences.entry(window).or_insert(0) += 1;
        }
    }

    Ok(streams
        .iter()
        .map(|stream| {
            if stream.len() < shingle_size {
                return 0.0;
            }
            let mut covered = vec![false; stream.len()];
            for (start, window) in stream.windows(shingle_size).enumerate() {
                if occurrences[window] >= 2 {
                    covered[start..start + shingle_size].fill(true);
                }
            }
            covered.iter().filter(|c| **c).count() as f64 / stream.len() as f64
        })
        .collect())
}

/// Per-file metric sets, in input order.
pub fn measure_files(
    all_facts: &[ClassicalFileFacts],
    shingle_size: usize,
) -> Result<Vec<ClassicalMetricSet>, MetricsError> {
    let ratios = duplicate_ratio(all_facts, shingle_size)?;
    Ok(all_facts
        .iter()
        .zip(ratios)
        .map(|(facts, dup)| ClassicalMetricSet {
            path: facts.path.clone(),
            function_complexities: cyclomatic(facts),
            function_sizes: method_sizes(facts),
            comment_lines: facts.comment_lines,
            code_lines: facts.code_lines,
            comment_density: comment_density(facts),
            duplicate_token_ratio: dup,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{analyze_source, FunctionUnit};

    fn facts_with(comment: usize, code: usize, blank: usize) -> ClassicalFileFacts {
        ClassicalFileFacts {
            path: "x.py".into(),
            total_lines: comment + code + blank,
            blank_lines: blank,
            comment_lines: comment,
            code_lines: code,
            functions: vec![],
            token_stream: vec![],
        }
    }

    fn tokens(path: &str, toks: &[&str]) -> ClassicalFileFacts {
        ClassicalFileFacts {
            token_stream: toks.iter().map(|s| s.to_string()).collect(),
            path: path.into(),
            ..facts_with(0, 0, 0)
        }
    }

    #[test]
    fn cyclomatic_formula() {
        let mut f = facts_with(0, 10, 0);
        f.functions = vec![
            FunctionUnit {
                name: "a".into(),
                start_line: 1,
                end_line: 5,
                code_lines: 5,
                decision_points: 4,
            },
            FunctionUnit {
                name: "b".into(),
                start_line: 6,
                end_line: 10,
                code_lines: 5,
                decision_points: 0,
            },
        ];
        let values: Vec<_> = cyclomatic(&f).into_iter().map(|v| v.value).collect();
        assert_eq!(values, vec![5, 1]);
        let sizes: Vec<_> = method_sizes(&f).into_iter().map(|v| v.value).collect();
        assert_eq!(sizes, vec![5, 5]);
        assert!(method_sizes(&facts_with(1, 1, 1)).is_empty());
    }

    #[test]
    fn density() {
        assert_eq!(comment_density(&facts_with(3, 5, 2)), 0.375);
        assert_eq!(comment_density(&facts_with(4, 0, 0)), 1.0);
        assert_eq!(comment_density(&facts_with(0, 0, 0)), 0.0);
        assert_eq!(comment_density(&facts_with(0, 0, 7)), 0.0);
    }

    #[test]
    fn rejects_tiny_shingles() {
        assert!(matches!(
            duplicate_ratio(&[], 1),
            Err(MetricsError::InvalidShingleSize(1))
        ));
    }

    #[test]
    fn short_file_scores_zero() {
        let f = tokens("a.py", &["ID", "=", "LIT"]);
        assert_eq!(
            duplicate_ratio(&[f.clone(), f], 30).unwrap(),
            vec![0.0, 0.0]
        );
    }

    #[test]
    fn verbatim_copy_is_fully_duplicated() {
        let src = "def f(a, b):\n    if a > b:\n        return a - b\n    return b * 2 + a\n";
        let a = analyze_source(src, "a.py");
        let b = analyze_source(src, "b.py");
        assert!(a.token_stream.len() >= 5);
        assert_eq!(duplicate_ratio(&[a, b], 5).unwrap(), vec![1.0, 1.0]);
    }

    #[test]
    fn within_file_repetition_counts() {
        let f = tokens("a.py", &["x", "y", "z", "x", "y", "q"]);
        // Window [x y] appears twice: positions 0,1 and 3,4.
        let r = duplicate_ratio(&[f], 2).unwrap();
        assert!((r[0] - 4.0 / 6.0).abs() < 1e-12);
    }
}
