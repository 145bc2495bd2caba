//! Line-oriented text format for QUBO problems.
//!
//! ```text
//! # comment
//! qubo <n>
//! offset <c>
//! lin <i> <value>
//! quad <i> <j> <value>        # i <= j, 0-based
//! ```
//!
//! `quad` entries are the coefficients of `x_i * x_j` in the expanded sum
//! form, stored once per pair: a `quad i j v` line with `i < j` corresponds
//! to `a_ij = a_ji = v` in the matrix form, and `quad i i v` to `a_ii = 2v`
//! (the pair `x_i x_i = x_i` carries the factor 1/2 of the diagonal).

use std::fs;
use std::path::Path;

use nalgebra::{DMatrix, DVector};

use super::{QuboError, QuboProblem};

pub fn save_problem(problem: &QuboProblem, path: impl AsRef<Path>) -> Result<(), QuboError> {
    fs::write(path, format_problem(problem))?;
    Ok(())
}

pub fn load_problem(path: impl AsRef<Path>) -> Result<QuboProblem, QuboError> {
    let text = fs::read_to_string(path)?;
    parse_problem(&text)
}

pub(crate) fn format_problem(problem: &QuboProblem) -> String {
    let n = problem.dim();
    let mut out = String::new();
    out.push_str(&format!("qubo {n}\n"));
    out.push_str(&format!("offset {}\n", problem.offset()));
    for i in 0..n {
        let b = problem.lin()[i];
        if b != 0.0 {
            out.push_str(&format!("lin {i} {b}\n"));
        }
    }
    for i in 0..n {
        for j in i..n {
            let coeff = problem.sum_form_coefficient(i, j);
            if coeff != 0.0 {
                out.push_str(&format!("quad {i} {j} {coeff}\n"));
            }
        }
    }
    out
}

pub(crate) fn parse_problem(text: &str) -> Result<QuboProblem, QuboError> {
    let err = |line: usize, message: String| QuboError::Parse { line, message };
    let parse_f64 = |line: usize, tok: &str| -> Result<f64, QuboError> {
        let v: f64 = tok
            .parse()
            .map_err(|_| err(line, format!("invalid number `{tok}`")))?;
        if !v.is_finite() {
            return Err(err(line, format!("non-finite value `{tok}`")));
        }
        Ok(v)
    };
    let parse_idx = |line: usize, tok: &str, n: usize| -> Result<usize, QuboError> {
        let i: usize = tok
            .parse()
            .map_err(|_| err(line, format!("invalid index `{tok}`")))?;
        if i >= n {
            return Err(err(line, format!("index {i} out of range for {n} variables")));
        }
        Ok(i)
    };

    let mut dim: Option<usize> = None;
    let mut offset: Option<f64> = None;
    let mut quad: Option<DMatrix<f64>> = None;
    let mut lin: Option<DVector<f64>> = None;
    let mut seen_lin: Vec<bool> = Vec::new();
    let mut seen_quad: Vec<bool> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let keyword = tokens.next().expect("non-empty line has a token");
        let rest: Vec<&str> = tokens.collect();
        match keyword {
            "qubo" => {
                if dim.is_some() {
                    return Err(err(lineno, "duplicate `qubo` header".into()));
                }
                let [tok] = rest.as_slice() else {
                    return Err(err(lineno, "expected `qubo <n>`".into()));
                };
                let n: usize = tok
                    .parse()
                    .map_err(|_| err(lineno, format!("invalid variable count `{tok}`")))?;
                if n == 0 {
                    return Err(err(lineno, "variable count must be positive".into()));
                }
                dim = Some(n);
                quad = Some(DMatrix::zeros(n, n));
                lin = Some(DVector::zeros(n));
                seen_lin = vec![false; n];
                seen_quad = vec![false; n * n];
            }
            "offset" => {
                let n_known = dim.is_some();
                if !n_known {
                    return Err(err(lineno, "`offset` before `qubo` header".into()));
                }
                if offset.is_some() {
                    return Err(err(lineno, "duplicate `offset` line".into()));
                }
                let [tok] = rest.as_slice() else {
                    return Err(err(lineno, "expected `offset <value>`".into()));
                };
                offset = Some(parse_f64(lineno, tok)?);
            }
            "lin" => {
                let n = dim.ok_or_else(|| err(lineno, "`lin` before `qubo` header".into()))?;
                let [itok, vtok] = rest.as_slice() else {
                    return Err(err(lineno, "expected `lin <i> <value>`".into()));
                };
                let i = parse_idx(lineno, itok, n)?;
                if seen_lin[i] {
                    return Err(err(lineno, format!("duplicate linear entry for index {i}")));
                }
                seen_lin[i] = true;
                lin.as_mut().unwrap()[i] = parse_f64(lineno, vtok)?;
            }
            "quad" => {
                let n = dim.ok_or_else(|| err(lineno, "`quad` before `qubo` header".into()))?;
                let [itok, jtok, vtok] = rest.as_slice() else {
                    return Err(err(lineno, "expected `quad <i> <j> <value>`".into()));
                };
                let i = parse_idx(lineno, itok, n)?;
                let j = parse_idx(lineno, jtok, n)?;
                if i > j {
                    return Err(err(lineno, format!("quad indices must satisfy i <= j, got {i} > {j}")));
                }
                if seen_quad[i * n + j] {
                    return Err(err(lineno, format!("duplicate quadratic entry ({i}, {j})")));
                }
                seen_quad[i * n + j] = true;
                let v = parse_f64(lineno, vtok)?;
                let m = quad.as_mut().unwrap();
                if i == j {
                    m[(i, i)] = 2.0 * v;
                } else {
                    m[(i, j)] = v;
                    m[(j, i)] = v;
                }
            }
            other => {
                return Err(err(lineno, format!("unknown keyword `{other}`")));
            }
        }
    }

    let Some(_) = dim else {
        return Err(err(0, "empty problem file: missing `qubo <n>` header".into()));
    };
    let Some(offset) = offset else {
        return Err(err(0, "missing `offset` line".into()));
    };
    QuboProblem::new(quad.unwrap(), lin.unwrap(), offset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::dvector;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    #[test]
    fn roundtrip_random_problem_is_exact() {
        let mut rng = ChaCha12Rng::seed_from_u64(2024);
        let n = 10;
        let mut quad = DMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                if rng.random::<f64>() < 0.6 {
                    let v: f64 = rng.random_range(-3.0..3.0);
                    quad[(i, j)] = v;
                    quad[(j, i)] = v;
                }
            }
        }
        let lin = DVector::from_fn(n, |_, _| rng.random_range(-3.0..3.0));
        let p = QuboProblem::new(quad, lin, rng.random::<f64>()).unwrap();

        let text = format_problem(&p);
        let q = parse_problem(&text).unwrap();
        assert_eq!(p.offset(), q.offset());
        for i in 0..n {
            assert_eq!(p.lin()[i], q.lin()[i]);
            for j in 0..n {
                assert_eq!(p.quad()[(i, j)], q.quad()[(i, j)]);
            }
        }
    }

    #[test]
    fn out_of_range_index_is_a_parse_error() {
        let text = "qubo 2\noffset 0\nquad 1 3 1.0\n";
        let err = parse_problem(text).unwrap_err();
        match err {
            QuboError::Parse { line, message } => {
                assert_eq!(line, 3);
                assert!(message.contains("out of range"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn empty_file_is_an_error_not_a_zero_problem() {
        assert!(matches!(
            parse_problem("").unwrap_err(),
            QuboError::Parse { .. }
        ));
        assert!(matches!(
            parse_problem("# only a comment\n").unwrap_err(),
            QuboError::Parse { .. }
        ));
    }

    #[test]
    fn diagonal_quad_entries_carry_the_half() {
        // quad i i v means the coefficient of x_i^2 = x_i is v, so a_ii = 2v
        // and evaluate(e_i) = 1/2 a_ii = v.
        let text = "qubo 1\noffset 0\nquad 0 0 1.5\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.quad()[(0, 0)], 3.0);
        let one = crate::qubo::BitString::from(vec![1]);
        assert_eq!(p.evaluate(&one).unwrap(), 1.5);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "# header\n\nqubo 2\noffset 1\n# middle\nlin 0 -2\nquad 0 1 0.5\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.lin()[0], -2.0);
        assert_eq!(p.quad()[(0, 1)], 0.5);
    }

    #[test]
    fn files_survive_disk_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.qubo");
        let p = QuboProblem::linear(dvector![1.0, -0.25], 0.125).unwrap();
        save_problem(&p, &path).unwrap();
        let q = load_problem(&path).unwrap();
        assert_eq!(p, q);
    }
}
