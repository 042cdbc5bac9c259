//! Direct spectral computation: eigenvalues `k_j` (so the Laplace spectrum
//! is `k_j²`) of a metric-graph operator on a window `(0, k_max]`.
//!
//! The real-axis secular function `f(k)` has two kinds of spectral points:
//!
//! * **lattice clusters** — points of the per-bond pole lattices.  At a
//!   cluster containing `c` per-bond lattice points the eigenvalue
//!   multiplicity is exactly `c + w`, where `w` is the net order of `f`
//!   there (`w > 0`: zero, `w < 0`: pole).  `w` is probed numerically from
//!   two-sided log-ratio slopes, and a non-integer estimate is reported as
//!   an error rather than rounded silently;
//! * **off-lattice roots** — simple sign-change zeros of `f` between
//!   consecutive clusters, located by a scan + bisection and polished with
//!   Newton steps driven by the analytic log-derivative.
//!
//! Every result carries a Weyl-law audit: the counting function of a graph
//! of total length `𝓛` satisfies `N(k) = 𝓛k/π + O(1)`, with the `O(1)`
//! bounded by the number of matching conditions, so a defect beyond
//! `2B + 2` indicates lost or spurious roots.

use serde::Serialize;

use crate::error::GraphZetaError;
use crate::secular::{SecularForm, POLE_REJECT};

/// Ratio between the two probe offsets in the order estimate.
const PROBE_RHO: f64 = 4.0;
/// Maximal accepted distance between an order estimate and an integer.
const ORDER_SLACK: f64 = 0.2;

/// One spectral point `k > 0` with its multiplicity.
#[derive(Debug, Clone, Serialize)]
pub struct Eigenvalue {
    /// Square root of the Laplace eigenvalue.
    pub k: f64,
    pub multiplicity: usize,
    /// Whether `k` sits on a structural lattice cluster (resolved by the
    /// order probe) rather than being an isolated sign-change root.
    pub on_lattice: bool,
}

/// The spectrum on `(0, k_max]` together with its Weyl audit.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<Eigenvalue>,
    pub k_max: f64,
    /// Count of the positive eigenvalues in the window, with multiplicity.
    pub total_multiplicity: usize,
    /// Number of negative eigenvalues (bound states) of the operator,
    /// counted as sign changes of the imaginary-axis secular function.
    /// Zero for every preset vertex; general self-adjoint conditions admit
    /// up to `2B` of them.
    pub negative_count: usize,
    /// Weyl prediction `𝓛·k_max/π`.
    pub weyl_prediction: f64,
    /// `total_multiplicity + negative_count − weyl_prediction`: Weyl's law
    /// counts all eigenvalues below the window edge, bound states included.
    pub weyl_defect: f64,
}

impl SpectrumResult {
    /// Partial spectral sum `Σ_j mult_j · k_j^{−2s}` over the window.
    pub fn partial_zeta(&self, s: f64) -> f64 {
        self.eigenvalues
            .iter()
            .map(|e| e.multiplicity as f64 * e.k.powf(-2.0 * s))
            .sum()
    }
}

/// A cluster of coincident (within tolerance) per-bond lattice candidates:
/// pole-lattice points plus probe-only points where even-order zeros can sit.
struct Cluster {
    center: f64,
    /// Pole-lattice points merged into this cluster; each contributes one
    /// unit to the counting arithmetic. Zero means a regular probe site.
    poles: usize,
}

fn cluster_candidates(cands: &[(f64, bool)], tol: f64) -> Vec<Cluster> {
    let mut clusters: Vec<Cluster> = Vec::new();
    let mut i = 0;
    while i < cands.len() {
        let start = cands[i].0;
        let mut j = i + 1;
        while j < cands.len() && cands[j].0 - start <= tol {
            j += 1;
        }
        let center = cands[i..j].iter().map(|c| c.0).sum::<f64>() / (j - i) as f64;
        let poles = cands[i..j].iter().filter(|c| c.1).count();
        clusters.push(Cluster { center, poles });
        i = j;
    }
    clusters
}

/// Two-sided net-order probe of `f` at `k0`.
fn probe_order(form: &SecularForm, k0: f64, delta: f64) -> Result<f64, GraphZetaError> {
    let mut acc = 0.0;
    for sgn in [1.0f64, -1.0] {
        let far = form.f(k0 + sgn * delta)?.abs();
        let near = form.f(k0 + sgn * delta / PROBE_RHO)?.abs();
        if far == 0.0 || near == 0.0 || !far.is_finite() || !near.is_finite() {
            return Err(GraphZetaError::NonGenericRoot {
                k: k0,
                estimate: f64::NAN,
            });
        }
        acc += (far / near).ln() / PROBE_RHO.ln();
    }
    Ok(acc / 2.0)
}

/// Probe the net order at `k0`, shrinking the offset when a root lying
/// between the probe radii contaminates the reading. Returns the rounded
/// order together with the offset that produced it: everything within
/// `delta / PROBE_RHO` of `k0` is folded into that reading, so the caller
/// must keep the sign scan outside exactly that radius.
fn probe_order_laddered(
    form: &SecularForm,
    k0: f64,
    delta0: f64,
    floor: f64,
) -> Result<(f64, f64), GraphZetaError> {
    let mut delta = delta0;
    let mut last = f64::NAN;
    for rung in 0..3 {
        match probe_order(form, k0, delta) {
            Ok(w) => {
                if (w - w.round()).abs() <= ORDER_SLACK {
                    return Ok((w, delta));
                }
                last = w;
            }
            // a probe point landed on a root: shrink and retry
            Err(GraphZetaError::NonGenericRoot { .. }) => {}
            Err(e) => return Err(e),
        }
        if delta <= floor {
            break;
        }
        if rung < 2 {
            delta = (delta / 8.0).max(floor);
        }
    }
    Err(GraphZetaError::NonGenericRoot {
        k: k0,
        estimate: last,
    })
}

/// Locate simple roots inside a probe's folded zone `(inner, reach)` on
/// both sides of a cluster center. Near the center |f| varies over orders
/// of magnitude (a pole or a degenerate zero sits there), so the offsets
/// are log-spaced; `f` has no pole strictly inside either side, hence every
/// sign change brackets a root. Returns how many roots were pushed.
fn locate_absorbed_roots(
    form: &SecularForm,
    center: f64,
    inner: f64,
    reach: f64,
    out: &mut Vec<Eigenvalue>,
) -> Result<usize, GraphZetaError> {
    if reach <= inner {
        return Ok(0);
    }
    let ratio = 10f64.powf(1.0 / 6.0);
    let mut found = 0usize;
    for sgn in [1.0f64, -1.0] {
        let mut d_prev = inner;
        let mut f_prev = form.f(center + sgn * inner)?;
        while d_prev < reach {
            let d = (d_prev * ratio).min(reach);
            let k = center + sgn * d;
            let fk = form.f(k)?;
            if fk == 0.0 {
                out.push(Eigenvalue {
                    k,
                    multiplicity: 1,
                    on_lattice: false,
                });
                found += 1;
            } else if f_prev != 0.0 && (fk > 0.0) != (f_prev > 0.0) {
                let (lo, hi, flo) = if sgn > 0.0 {
                    (center + d_prev, k, f_prev)
                } else {
                    (k, center - d_prev, fk)
                };
                let root = refine_root(form, lo, hi, flo)?;
                out.push(Eigenvalue {
                    k: root,
                    multiplicity: 1,
                    on_lattice: false,
                });
                found += 1;
            }
            d_prev = d;
            f_prev = fk;
        }
    }
    Ok(found)
}

/// Bisection + Newton refinement of a bracketed sign change.
fn refine_root(
    form: &SecularForm,
    mut lo: f64,
    mut hi: f64,
    mut flo: f64,
) -> Result<f64, GraphZetaError> {
    // bisect to a Newton-safe width
    let coarse = 1e-6 * hi.max(1.0);
    while hi - lo > coarse {
        let mid = 0.5 * (lo + hi);
        let fmid = form.f(mid)?;
        if fmid == 0.0 {
            return Ok(mid);
        }
        if (fmid > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    let bracket = (lo, hi);
    let mut k = 0.5 * (lo + hi);
    for _ in 0..3 {
        let step = match form.dlog_f(k) {
            Ok(d) if d.is_finite() && d != 0.0 => -1.0 / d,
            _ => break,
        };
        let next = k + step;
        if !(bracket.0 - coarse..=bracket.1 + coarse).contains(&next) {
            break;
        }
        k = next;
        if step.abs() <= 1e-14 * k.max(1.0) {
            return Ok(k);
        }
    }
    if (bracket.0..=bracket.1).contains(&k) {
        // Newton stayed in the bracket: quadratic convergence from a
        // 1e-6-wide interval leaves it fully converged
        return Ok(k);
    }
    // fall back to pure bisection at full precision
    let (mut lo, mut hi) = bracket;
    let mut flo = form.f(lo)?;
    while hi - lo > 1e-13 * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        let fmid = form.f(mid)?;
        if fmid == 0.0 {
            return Ok(mid);
        }
        if (fmid > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Count the negative eigenvalues of the operator: each is a zero of the
/// imaginary-axis secular function `g` on `(0, ∞)`, and beyond the point
/// where the large-`t` log series of `g` is converged the function cannot
/// vanish any more, so a sign scan up to that cutoff is exhaustive (up to
/// even-order tangencies, which no sign-based method can see).
fn count_negative_eigenvalues(form: &SecularForm) -> Result<usize, GraphZetaError> {
    let asym = form.asymptotic();
    let mut radius = 0.0f64;
    for (j, &b) in asym.b.iter().enumerate() {
        let n = (j + 1) as f64;
        radius = radius.max((n * b.abs()).powf(1.0 / n));
    }
    let t_hi = (50.0 / form.graph().min_length())
        .max(8.0 * radius)
        .max(2.0);
    let n = 2000usize;
    let mut count = 0usize;
    // g(0) > 0 by construction (zero modes and odd bound-state counts are
    // rejected when the form is built)
    let mut prev = asym.g0;
    for i in 1..=n {
        let t = t_hi * i as f64 / n as f64;
        let gt = form.g(t)?;
        if gt == 0.0 {
            count += 1;
            prev = -prev;
        } else {
            if (gt > 0.0) != (prev > 0.0) {
                count += 1;
            }
            prev = gt;
        }
    }
    Ok(count)
}

/// Sign-scan an open interval (free of lattice poles) for simple roots,
/// zooming into same-sign dips where a close pair of roots can hide
/// between samples.
fn scan_interval(
    form: &SecularForm,
    lo: f64,
    hi: f64,
    spacing: f64,
    out: &mut Vec<Eigenvalue>,
) -> Result<(), GraphZetaError> {
    if hi <= lo {
        return Ok(());
    }
    let n = ((10.0 * (hi - lo) / spacing).ceil() as usize).max(8);
    let h = (hi - lo) / n as f64;
    let mut ks = Vec::with_capacity(n + 1);
    let mut fs = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let k = if i == n { hi } else { lo + i as f64 * h };
        ks.push(k);
        fs.push(form.f(k)?);
    }
    for i in 1..=n {
        if fs[i] == 0.0 {
            out.push(Eigenvalue {
                k: ks[i],
                multiplicity: 1,
                on_lattice: false,
            });
        } else if fs[i - 1] != 0.0 && (fs[i] > 0.0) != (fs[i - 1] > 0.0) {
            let root = refine_root(form, ks[i - 1], ks[i], fs[i - 1])?;
            out.push(Eigenvalue {
                k: root,
                multiplicity: 1,
                on_lattice: false,
            });
        }
    }
    // a pair of roots closer than the sample step leaves no sign change,
    // only a same-sign dip; chase every local minimum of |f| down
    for i in 1..n {
        let same_sign = (fs[i - 1] > 0.0) == (fs[i] > 0.0) && (fs[i] > 0.0) == (fs[i + 1] > 0.0);
        if same_sign
            && fs[i] != 0.0
            && fs[i].abs() < fs[i - 1].abs()
            && fs[i].abs() <= fs[i + 1].abs()
        {
            let reference = fs[i - 1].abs().min(fs[i + 1].abs());
            scan_dip(form, ks[i - 1], ks[i + 1], reference, 0, out)?;
        }
    }
    Ok(())
}

/// Resolve a same-sign dip of `f` on `[a, b]`: refine any sign changes that
/// appear under subdivision, zoom while the dip keeps deepening, and refuse
/// (rather than guess) when |f| bottoms out at zero without crossing.
fn scan_dip(
    form: &SecularForm,
    a: f64,
    b: f64,
    reference: f64,
    depth: usize,
    out: &mut Vec<Eigenvalue>,
) -> Result<(), GraphZetaError> {
    const M: usize = 16;
    let h = (b - a) / M as f64;
    let mut ks = [0.0f64; M + 1];
    let mut fs = [0.0f64; M + 1];
    for i in 0..=M {
        ks[i] = if i == M { b } else { a + i as f64 * h };
        fs[i] = form.f(ks[i])?;
    }
    let mut found = false;
    for i in 1..=M {
        if fs[i] == 0.0 {
            out.push(Eigenvalue {
                k: ks[i],
                multiplicity: 1,
                on_lattice: false,
            });
            found = true;
        } else if fs[i - 1] != 0.0 && (fs[i] > 0.0) != (fs[i - 1] > 0.0) {
            let root = refine_root(form, ks[i - 1], ks[i], fs[i - 1])?;
            out.push(Eigenvalue {
                k: root,
                multiplicity: 1,
                on_lattice: false,
            });
            found = true;
        }
    }
    if found {
        return Ok(());
    }
    let mut j = 1;
    for i in 2..M {
        if fs[i].abs() < fs[j].abs() {
            j = i;
        }
    }
    if depth >= 3 {
        if fs[j].abs() < 1e-9 * reference {
            // the dip reaches zero at this resolution but never crosses:
            // an (effectively) even-order tangency a sign method cannot
            // split into roots
            return Err(GraphZetaError::NonGenericRoot {
                k: ks[j],
                estimate: fs[j],
            });
        }
        return Ok(());
    }
    if fs[j].abs() < 0.25 * reference {
        return scan_dip(form, ks[j - 1], ks[j + 1], reference, depth + 1, out);
    }
    Ok(())
}

/// Compute the spectrum of `form` on `(0, k_max]`.
pub fn compute_spectrum(
    form: &SecularForm,
    k_max: f64,
) -> Result<SpectrumResult, GraphZetaError> {
    if !(k_max > 0.0 && k_max.is_finite()) {
        return Err(GraphZetaError::MalformedInput(format!(
            "k_max must be positive and finite, got {k_max}"
        )));
    }
    let total_length = form.graph().total_length();
    let spacing = std::f64::consts::PI / total_length;
    let tol = 1e-6 * spacing;

    let mut cands: Vec<(f64, bool)> = form
        .lattice_points_in(tol, k_max + tol)
        .into_iter()
        .map(|k| (k, true))
        .collect();
    cands.extend(
        form.probe_points_in(tol, k_max + tol)
            .into_iter()
            .map(|k| (k, false)),
    );
    cands.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let clusters = cluster_candidates(&cands, tol);

    let mut eigenvalues: Vec<Eigenvalue> = Vec::new();
    // per-cluster exclusion radius handed to the sign-scan pass; everything
    // the accepted probe folded into a cluster stays out of the scan, and
    // nothing else does
    let mut margins: Vec<f64> = Vec::with_capacity(clusters.len());

    for (ci, cl) in clusters.iter().enumerate() {
        let gap_left = if ci == 0 {
            cl.center
        } else {
            cl.center - clusters[ci - 1].center
        };
        let gap_right = if ci + 1 < clusters.len() {
            clusters[ci + 1].center - cl.center
        } else {
            f64::INFINITY
        };
        let gap = gap_left.min(gap_right);
        // probe offset: small against the gap to the neighboring cluster
        // (distinct lattice points of incommensurate bonds can pass within
        // a fraction of the mean spacing) yet large against the merge
        // radius and the near-pole evaluation guard of `f`
        let floor = (4.0 * tol).max(8.0 * POLE_REJECT * cl.center.max(1.0));
        let delta = (0.05 * gap).min(1e-3 * spacing).max(floor);

        if cl.poles > 0 {
            // pole site: multiplicity = merged pole count + net order of f
            if delta > 0.25 * gap {
                return Err(GraphZetaError::PoleProximity {
                    k: cl.center,
                    pole: if gap_left <= gap_right {
                        cl.center - gap_left
                    } else {
                        cl.center + gap_right
                    },
                    distance: gap,
                });
            }
            let (w, accepted) = probe_order_laddered(form, cl.center, delta, floor)?;
            let reach = accepted / PROBE_RHO;
            // a simple root passing very close to the pole is folded into
            // the probe reading; pin it down and report it at its own k,
            // working as near the pole as the evaluation guard allows
            let inner = 1.25 * POLE_REJECT * cl.center.max(1.0);
            let absorbed = locate_absorbed_roots(form, cl.center, inner, reach, &mut eigenvalues)?;
            let mult = cl.poles as i64 + w.round() as i64 - absorbed as i64;
            if mult < 0 {
                return Err(GraphZetaError::NonGenericRoot {
                    k: cl.center,
                    estimate: w,
                });
            }
            if mult > 0 {
                eigenvalues.push(Eigenvalue {
                    k: cl.center,
                    multiplicity: mult as usize,
                    on_lattice: true,
                });
            }
            margins.push(reach);
        } else {
            // regular probe site: only an even-order zero — a degenerate
            // eigenvalue pinned to this lattice value — needs action here;
            // simple roots nearby are left to the sign scan, so a reading
            // they contaminate is dropped rather than treated as an error
            let probed = if delta > 0.25 * gap {
                None
            } else {
                probe_order_laddered(form, cl.center, delta, floor).ok()
            };
            match probed {
                Some((w, accepted)) if w.round() >= 2.0 => {
                    let reach = accepted / PROBE_RHO;
                    let inner = 1.25 * POLE_REJECT * cl.center.max(1.0);
                    let absorbed =
                        locate_absorbed_roots(form, cl.center, inner, reach, &mut eigenvalues)?;
                    let mult = w.round() as i64 - absorbed as i64;
                    if mult < 0 {
                        return Err(GraphZetaError::NonGenericRoot {
                            k: cl.center,
                            estimate: w,
                        });
                    }
                    if mult > 0 {
                        eigenvalues.push(Eigenvalue {
                            k: cl.center,
                            multiplicity: mult as usize,
                            on_lattice: true,
                        });
                    }
                    margins.push(reach);
                }
                _ => margins.push(0.0),
            }
        }
    }

    // off-lattice roots on the open intervals between the probed zones
    let mut lo = tol;
    for (ci, cl) in clusters.iter().enumerate() {
        let hi = (cl.center - margins[ci]).min(k_max);
        scan_interval(form, lo, hi, spacing, &mut eigenvalues)?;
        lo = cl.center + margins[ci];
        if lo >= k_max {
            break;
        }
    }
    if lo < k_max {
        scan_interval(form, lo, k_max, spacing, &mut eigenvalues)?;
    }

    eigenvalues.retain(|e| e.k <= k_max + tol);
    eigenvalues.sort_by(|a, b| a.k.partial_cmp(&b.k).unwrap());

    let total_multiplicity: usize = eigenvalues.iter().map(|e| e.multiplicity).sum();
    let negative_count = count_negative_eigenvalues(form)?;
    let weyl_prediction = total_length * k_max / std::f64::consts::PI;
    Ok(SpectrumResult {
        eigenvalues,
        k_max,
        total_multiplicity,
        negative_count,
        weyl_prediction,
        weyl_defect: (total_multiplicity + negative_count) as f64 - weyl_prediction,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ConditionKind, Graph, MatchingConditions, NodeCondition};
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;
    use std::f64::consts::PI;

    /// Closed-form spectrum of the equal-length star with `bn` Neumann and
    /// `bd` Dirichlet nodes and a Kirchhoff center: four interleaved
    /// lattices with known multiplicities.
    fn equal_star_oracle(bn: usize, bd: usize, l: f64, k_max: f64) -> Vec<(f64, usize)> {
        let b = bn + bd;
        let mut out: Vec<(f64, usize)> = Vec::new();
        let push = |out: &mut Vec<(f64, usize)>, k: f64, m: usize| {
            if k <= k_max && m > 0 {
                out.push((k, m));
            }
        };
        if bd == 0 {
            // pure Neumann: (m+1/2)π/L with mult B−1, mπ/L with mult 1
            let mut m = 0;
            loop {
                let k = (m as f64 + 0.5) * PI / l;
                if k > k_max {
                    break;
                }
                push(&mut out, k, b - 1);
                m += 1;
            }
            let mut m = 1;
            loop {
                let k = m as f64 * PI / l;
                if k > k_max {
                    break;
                }
                push(&mut out, k, 1);
                m += 1;
            }
        } else {
            let alpha = (bd as f64 / b as f64).sqrt().asin() / PI;
            let mut m = 0;
            loop {
                let k = (m as f64 + alpha) * PI / l;
                if k > k_max {
                    break;
                }
                push(&mut out, k, 1);
                m += 1;
            }
            let mut m = 1;
            loop {
                let k = (m as f64 - alpha) * PI / l;
                if k > k_max {
                    break;
                }
                push(&mut out, k, 1);
                m += 1;
            }
            let mut m = 0;
            loop {
                let k = (m as f64 + 0.5) * PI / l;
                if k > k_max {
                    break;
                }
                push(&mut out, k, bn.saturating_sub(1));
                m += 1;
            }
            let mut m = 1;
            loop {
                let k = m as f64 * PI / l;
                if k > k_max {
                    break;
                }
                push(&mut out, k, bd.saturating_sub(1));
                m += 1;
            }
        }
        out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        // merge coincident entries
        let mut merged: Vec<(f64, usize)> = Vec::new();
        for (k, m) in out {
            if let Some(last) = merged.last_mut() {
                if (last.0 - k).abs() < 1e-9 {
                    last.1 += m;
                    continue;
                }
            }
            merged.push((k, m));
        }
        merged
    }

    fn assert_spectra_match(result: &SpectrumResult, oracle: &[(f64, usize)]) {
        assert_eq!(
            result.eigenvalues.len(),
            oracle.len(),
            "eigenvalue count mismatch:\n got {:?}\n want {:?}",
            result.eigenvalues,
            oracle
        );
        for (e, (k, m)) in result.eigenvalues.iter().zip(oracle) {
            assert_relative_eq!(e.k, *k, max_relative = 1e-9);
            assert_eq!(e.multiplicity, *m, "multiplicity at k = {k}");
        }
    }

    #[test]
    fn equal_neumann_star_spectrum_is_exact() {
        let graph = Graph::new(vec![1.0; 3]).unwrap();
        let form =
            SecularForm::star_sum(&graph, &[NodeCondition::Neumann; 3], 0.0).unwrap();
        let result = compute_spectrum(&form, 20.0).unwrap();
        let oracle = equal_star_oracle(3, 0, 1.0, 20.0);
        assert_spectra_match(&result, &oracle);
        assert!(result.weyl_defect.abs() <= 8.0);
    }

    #[test]
    fn equal_mixed_star_spectrum_is_exact() {
        // B = 4, one Dirichlet node: eigenvalues (m ± 1/6)π and doubly
        // degenerate half-integer lattice points
        let graph = Graph::new(vec![1.0; 4]).unwrap();
        let nodes = [
            NodeCondition::Dirichlet,
            NodeCondition::Neumann,
            NodeCondition::Neumann,
            NodeCondition::Neumann,
        ];
        let form = SecularForm::star_sum(&graph, &nodes, 0.0).unwrap();
        let result = compute_spectrum(&form, 15.0).unwrap();
        let oracle = equal_star_oracle(3, 1, 1.0, 15.0);
        assert_spectra_match(&result, &oracle);
    }

    #[test]
    fn smooth_piston_is_a_plain_interval() {
        // Dirichlet nodes, continuity center with λ = 0: a single interval
        // of total length 1 with Dirichlet ends, spectrum mπ
        let graph = Graph::new(vec![0.35, 0.65]).unwrap();
        let a_c = DMatrix::from_row_slice(2, 2, &[1.0, -1.0, 0.0, 0.0]);
        let b_c = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 1.0]);
        let form = SecularForm::star_center(&graph, a_c, b_c).unwrap();
        let result = compute_spectrum(&form, 31.0).unwrap();
        assert_eq!(result.eigenvalues.len(), 9);
        for (m, e) in result.eigenvalues.iter().enumerate() {
            assert_relative_eq!(e.k, (m as f64 + 1.0) * PI, max_relative = 1e-9);
            assert_eq!(e.multiplicity, 1);
            assert!(!e.on_lattice);
        }
    }

    #[test]
    fn dirichlet_interval_spectrum_is_pure_lattice() {
        // raw pair A = I, B = 0 on one bond of length 2: f ≡ 1, and the
        // whole spectrum mπ/2 comes from the lattice bookkeeping
        let graph = Graph::new(vec![2.0]).unwrap();
        let a = DMatrix::<f64>::identity(2, 2);
        let b = DMatrix::<f64>::zeros(2, 2);
        let mc = MatchingConditions::from_real(&a, &b).unwrap();
        let form = SecularForm::general(&graph, mc).unwrap();
        let result = compute_spectrum(&form, 10.0).unwrap();
        assert_eq!(result.eigenvalues.len(), 6);
        for (m, e) in result.eigenvalues.iter().enumerate() {
            assert_relative_eq!(e.k, (m as f64 + 1.0) * PI / 2.0, max_relative = 1e-12);
            assert_eq!(e.multiplicity, 1);
            assert!(e.on_lattice);
        }
    }

    #[test]
    fn incommensurate_star_passes_weyl_audit() {
        let lengths = vec![1.0, 2f64.sqrt(), std::f64::consts::E / 2.0];
        let graph = Graph::new(lengths).unwrap();
        let nodes = [
            NodeCondition::Neumann,
            NodeCondition::Dirichlet,
            NodeCondition::Neumann,
        ];
        let form = SecularForm::star_sum(&graph, &nodes, 1.7).unwrap();
        let result = compute_spectrum(&form, 60.0).unwrap();
        assert!(
            result.weyl_defect.abs() <= 8.0,
            "weyl defect {}",
            result.weyl_defect
        );
        // eigenvalues are strictly increasing and positive
        for w in result.eigenvalues.windows(2) {
            assert!(w[0].k < w[1].k);
        }
        assert!(result.eigenvalues[0].k > 0.0);
    }

    #[test]
    fn general_form_agrees_with_star_sum_route() {
        let lengths = vec![0.9, 1.3, 0.7];
        let graph = Graph::new(lengths).unwrap();
        let nodes = vec![
            NodeCondition::Dirichlet,
            NodeCondition::Neumann,
            NodeCondition::Neumann,
        ];
        let lambda = 2.2;
        let ss = SecularForm::star_sum(&graph, &nodes, lambda).unwrap();
        let kind = ConditionKind::Star {
            nodes: nodes.clone(),
            lambda,
        };
        let gen = SecularForm::general(&graph, kind.matching_conditions().unwrap()).unwrap();
        let r1 = compute_spectrum(&ss, 25.0).unwrap();
        let r2 = compute_spectrum(&gen, 25.0).unwrap();
        assert_eq!(r1.total_multiplicity, r2.total_multiplicity);
        for (a, b) in r1.eigenvalues.iter().zip(&r2.eigenvalues) {
            assert_relative_eq!(a.k, b.k, max_relative = 1e-8);
            assert_eq!(a.multiplicity, b.multiplicity);
        }
    }

    #[test]
    fn partial_zeta_converges_toward_known_value() {
        // equal Neumann star, s = 1: ζ(1) = (L/π)² ζ_R(2)[2·4 − 1] = 7/6
        // for B = 3, L = 1; a finite window plus integer-tail comparison
        let graph = Graph::new(vec![1.0; 3]).unwrap();
        let form =
            SecularForm::star_sum(&graph, &[NodeCondition::Neumann; 3], 0.0).unwrap();
        let result = compute_spectrum(&form, 300.0).unwrap();
        let partial = result.partial_zeta(1.0);
        // tail ≈ ∫ (𝓛/π) k^{-2} dk from k_max = 𝓛/(π k_max)
        let tail = 3.0 / (PI * 300.0);
        assert_relative_eq!(partial + tail, 7.0 / 6.0, max_relative = 1e-4);
    }
}
