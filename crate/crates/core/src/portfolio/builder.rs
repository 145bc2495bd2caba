use nalgebra::{DMatrix, DVector};

use crate::qubo::QuboProblem;

use super::{PortfolioError, PortfolioSpec};

/// Assemble the dynamic portfolio QUBO.
///
/// In weight space the objective is `<w|M|w> + <b|w> + c` with a block
/// tridiagonal `M`: diagonal blocks
///
/// ```text
/// M_t = lambda C_t + mu (V_t + V_{t+1}) + F 1
/// ```
///
/// off-diagonal blocks `-mu V_{t+1}` linking periods `t` and `t+1`,
/// `b_t = -r_t - 2F 1`, and `c = F T`. `V_{T+1} = 0` (no changes after the
/// final period) and the initial portfolio is all cash (`w^(0) = 0`), so the
/// first period's rebalancing buys the entire portfolio.
///
/// Each weight is then binarized as `w = sum_k 2^{-k} x^(k)`: every scalar
/// matrix entry `m` expands to the block `m * s s^T` over its bit group and
/// every linear entry `b` to `b * s`, with `s_k = 2^{-k}`. The emitted
/// problem stores `A = 2 M_expanded` so that `1/2 x^T A x + b^T x + c`
/// equals the objective above exactly.
///
/// Bit layout: period-major, then asset, then bit significance.
pub fn build_dynamic_qubo(spec: &PortfolioSpec) -> QuboProblem {
    let n = spec.n_assets();
    let t_count = spec.n_periods();
    let ell = spec.bits_per_weight();
    let dim = spec.n_bits();
    let lambda = spec.risk_aversion();
    let mu = spec.cost_sensitivity();
    let f = spec.penalty();
    let scales = spec.codec().scales();

    // Weight-space coefficient of the (period ti, asset i) x (period tj, asset j)
    // entry of the block tridiagonal matrix M.
    let weight_entry = |ti: usize, i: usize, tj: usize, j: usize| -> f64 {
        if ti == tj {
            let mut m = lambda * spec.covariance(ti)[(i, j)] + f;
            if i == j {
                m += mu * spec.unit_costs(ti)[i];
                if ti + 1 < t_count {
                    m += mu * spec.unit_costs(ti + 1)[i];
                }
            }
            m
        } else if ti + 1 == tj && i == j {
            -mu * spec.unit_costs(tj)[i]
        } else if tj + 1 == ti && i == j {
            -mu * spec.unit_costs(ti)[i]
        } else {
            0.0
        }
    };

    let mut quad = DMatrix::zeros(dim, dim);
    let mut lin = DVector::zeros(dim);
    for ti in 0..t_count {
        for i in 0..n {
            let b = -spec.returns(ti)[i] - 2.0 * f;
            for (k, sk) in scales.iter().enumerate() {
                lin[spec.bit_index(ti, i, k)] = b * sk;
            }
            for tj in 0..t_count {
                for j in 0..n {
                    let m = weight_entry(ti, i, tj, j);
                    if m == 0.0 {
                        continue;
                    }
                    for (k, sk) in scales.iter().enumerate() {
                        let row = spec.bit_index(ti, i, k);
                        for (k2, sk2) in scales.iter().enumerate() {
                            quad[(row, spec.bit_index(tj, j, k2))] += 2.0 * m * sk * sk2;
                        }
                    }
                }
            }
        }
    }

    QuboProblem::new(quad, lin, f * t_count as f64).expect("builder emits a valid problem")
}

/// Assemble the three-asset toy QUBO with the budget constraint eliminated.
///
/// Requires exactly 3 assets and one period; the third asset's weight is
/// substituted as `w_3 = 1 - w_1 - w_2`, which removes the penalty term
/// entirely (the spec's `F` has no effect on the coefficients). What remains
/// is the classical three-security mean-variance objective
/// `-r^T w + lambda w^T C w` expanded in the two free weights, binarized
/// through the codec; the emitted problem has `2 l` variables.
pub fn build_toy_qubo(spec: &PortfolioSpec) -> Result<QuboProblem, PortfolioError> {
    if spec.n_assets() != 3 || spec.n_periods() != 1 {
        return Err(PortfolioError::ToyShape {
            assets: spec.n_assets(),
            periods: spec.n_periods(),
        });
    }
    let lambda = spec.risk_aversion();
    let r = spec.returns(0);
    let c = spec.covariance(0);
    let ell = spec.bits_per_weight();
    let scales = spec.codec().scales();

    // -r1 w1 - r2 w2 - r3 (1 - w1 - w2)
    //   + lambda [ c11 w1^2 + c22 w2^2 + c33 (1 - w1 - w2)^2
    //              + 2 c12 w1 w2 + 2 c13 w1 (1 - w1 - w2) + 2 c23 w2 (1 - w1 - w2) ]
    let q11 = lambda * (c[(0, 0)] + c[(2, 2)] - 2.0 * c[(0, 2)]);
    let q22 = lambda * (c[(1, 1)] + c[(2, 2)] - 2.0 * c[(1, 2)]);
    let q12 = 2.0 * lambda * (c[(0, 1)] + c[(2, 2)] - c[(0, 2)] - c[(1, 2)]);
    let l1 = (r[2] - r[0]) + 2.0 * lambda * (c[(0, 2)] - c[(2, 2)]);
    let l2 = (r[2] - r[1]) + 2.0 * lambda * (c[(1, 2)] - c[(2, 2)]);
    let constant = -r[2] + lambda * c[(2, 2)];

    let dim = 2 * ell;
    let mut quad = DMatrix::zeros(dim, dim);
    let mut lin = DVector::zeros(dim);
    let weight_quad = [[q11, 0.5 * q12], [0.5 * q12, q22]];
    let weight_lin = [l1, l2];
    for a in 0..2 {
        for (k, sk) in scales.iter().enumerate() {
            lin[a * ell + k] = weight_lin[a] * sk;
        }
        for b in 0..2 {
            let m = weight_quad[a][b];
            if m == 0.0 {
                continue;
            }
            for (k, sk) in scales.iter().enumerate() {
                for (k2, sk2) in scales.iter().enumerate() {
                    quad[(a * ell + k, b * ell + k2)] += 2.0 * m * sk * sk2;
                }
            }
        }
    }

    Ok(QuboProblem::new(quad, lin, constant)?)
}
