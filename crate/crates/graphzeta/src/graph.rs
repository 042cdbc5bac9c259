//! Metric graphs and self-adjoint matching conditions.
//!
//! A graph here is a star: `B` bonds of lengths `L_b`, each parametrized by
//! `x ∈ [0, L_b]` with the *node* (outer vertex) at `x = 0` and the shared
//! *center* at `x = L_b`.  Boundary data is collected into
//!
//! ```text
//! φ  = (ψ_1(0), …, ψ_B(0), ψ_1(L_1), …, ψ_B(L_B))
//! φ′ = (ψ′_1(0), …, ψ′_B(0), −ψ′_1(L_1), …, −ψ′_B(L_B))
//! ```
//!
//! (derivatives taken *into* the bond), and matching conditions are
//! `A·φ + B·φ′ = 0` for a pair of square matrices with `(A|B)` of maximal
//! rank and `A·B†` Hermitian — the classical parametrization of all
//! self-adjoint realizations of the Laplacian.
//!
//! Conditions arrive in three shapes, kept separate because the secular
//! machinery exploits their structure differently:
//!
//! * [`ConditionKind::Star`] — per-node Dirichlet/Neumann plus a δ coupling
//!   of strength `λ` at the center (`λ = 0` is Kirchhoff/Neumann),
//! * [`ConditionKind::StarCenter`] — Dirichlet at every node, an arbitrary
//!   self-adjoint `B×B` pair `(A_c, B_c)` at the center (this is how a
//!   hard-wall piston with `λ → ∞` is expressed),
//! * [`ConditionKind::General`] — a raw `2B×2B` pair.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::GraphZetaError;

pub type C64 = Complex<f64>;

/// Relative singular-value threshold for rank decisions.
const RANK_TOL: f64 = 1e-10;
/// Relative tolerance on the Hermiticity defect of `A·B†`.
const HERMITICITY_TOL: f64 = 1e-10;

/// A metric star graph: bond lengths only (the topology is implicit).
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    lengths: Vec<f64>,
}

impl Graph {
    pub fn new(lengths: Vec<f64>) -> Result<Self, GraphZetaError> {
        if lengths.is_empty() {
            return Err(GraphZetaError::MalformedInput(
                "graph needs at least one bond".into(),
            ));
        }
        for (i, &l) in lengths.iter().enumerate() {
            if !(l > 0.0) || !l.is_finite() {
                return Err(GraphZetaError::InvalidLength { bond: i, value: l });
            }
        }
        Ok(Graph { lengths })
    }

    pub fn num_bonds(&self) -> usize {
        self.lengths.len()
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn total_length(&self) -> f64 {
        self.lengths.iter().sum()
    }

    pub fn min_length(&self) -> f64 {
        self.lengths.iter().cloned().fold(f64::INFINITY, f64::min)
    }
}

/// Boundary condition at an outer node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NodeCondition {
    Dirichlet,
    Neumann,
}

/// Structured matching conditions for a star graph.
#[derive(Debug, Clone)]
pub enum ConditionKind {
    /// Per-node conditions, δ coupling of strength `lambda` at the center.
    Star {
        nodes: Vec<NodeCondition>,
        lambda: f64,
    },
    /// Dirichlet at all nodes, arbitrary center pair (B×B, real).
    StarCenter { a_c: DMatrix<f64>, b_c: DMatrix<f64> },
    /// Fully general 2B×2B pair.
    General(Box<MatchingConditions>),
}

/// A validated self-adjoint pair `(A, B)` of square complex matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingConditions {
    a: DMatrix<C64>,
    b: DMatrix<C64>,
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<C64> {
    m.map(|x| C64::new(x, 0.0))
}

impl MatchingConditions {
    /// Validate and wrap a pair: square, same dims, `(A|B)` of full rank,
    /// `A·B†` Hermitian.
    pub fn new(a: DMatrix<C64>, b: DMatrix<C64>) -> Result<Self, GraphZetaError> {
        let n = a.nrows();
        if a.ncols() != n || b.nrows() != n || b.ncols() != n {
            return Err(GraphZetaError::DimensionMismatch {
                expected: n,
                rows: b.nrows(),
                cols: b.ncols(),
            });
        }

        // rank of the n×2n block (A|B)
        let mut ab = DMatrix::<C64>::zeros(n, 2 * n);
        ab.view_mut((0, 0), (n, n)).copy_from(&a);
        ab.view_mut((0, n), (n, n)).copy_from(&b);
        let sv = ab.svd(false, false).singular_values;
        let smax = sv.iter().cloned().fold(0.0f64, f64::max);
        let rank = sv.iter().filter(|&&s| s > RANK_TOL * smax).count();
        if rank < n {
            return Err(GraphZetaError::RankDeficient { rank, needed: n });
        }

        // Hermiticity of A B†
        let m = &a * b.adjoint();
        let defect = (&m - m.adjoint()).map(|z| z.norm()).max();
        let scale = m.map(|z| z.norm()).max().max(smax * smax).max(1.0);
        if defect > HERMITICITY_TOL * scale {
            return Err(GraphZetaError::NotSelfAdjoint {
                defect: defect / scale,
            });
        }

        Ok(MatchingConditions { a, b })
    }

    /// Validated real pair.
    pub fn from_real(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<Self, GraphZetaError> {
        MatchingConditions::new(to_complex(a), to_complex(b))
    }

    pub fn dim(&self) -> usize {
        self.a.nrows()
    }

    pub fn a(&self) -> &DMatrix<C64> {
        &self.a
    }

    pub fn b(&self) -> &DMatrix<C64> {
        &self.b
    }

    /// Max-norm of `A·B† − (A·B†)†`, relative to scale (0 for self-adjoint
    /// pairs up to rounding).
    pub fn hermiticity_defect(&self) -> f64 {
        let m = &self.a * self.b.adjoint();
        let defect = (&m - m.adjoint()).map(|z| z.norm()).max();
        let scale = m.map(|z| z.norm()).max().max(1.0);
        defect / scale
    }

    /// Vertex scattering matrix `S(k) = −(A + ikB)⁻¹ (A − ikB)`; unitary for
    /// every real `k ≠ 0`.
    pub fn scattering_matrix(&self, k: f64) -> Result<DMatrix<C64>, GraphZetaError> {
        let ik = C64::new(0.0, k);
        let plus = &self.a + &self.b * ik;
        let minus = &self.a - &self.b * ik;
        let lu = plus.lu();
        match lu.solve(&minus) {
            Some(sol) => Ok(-sol),
            None => Err(GraphZetaError::QuadratureFailure(format!(
                "A + ikB singular at k = {k}; conditions cannot be self-adjoint"
            ))),
        }
    }

    /// Reverse the parametrization of bond `bond` (swap its two boundary
    /// columns).  Only meaningful for `2B×2B` pairs.
    pub fn reverse_bond(&self, bond: usize) -> Self {
        let n = self.dim();
        let nb = n / 2;
        assert!(n % 2 == 0 && bond < nb);
        let mut a = self.a.clone();
        let mut b = self.b.clone();
        a.swap_columns(bond, nb + bond);
        b.swap_columns(bond, nb + bond);
        MatchingConditions { a, b }
    }
}

impl ConditionKind {
    /// Number of bonds these conditions apply to, if determined.
    pub fn num_bonds(&self) -> usize {
        match self {
            ConditionKind::Star { nodes, .. } => nodes.len(),
            ConditionKind::StarCenter { a_c, .. } => a_c.nrows(),
            ConditionKind::General(mc) => mc.dim() / 2,
        }
    }

    /// Materialize the full validated `2B×2B` pair in the `φ, φ′` ordering.
    pub fn matching_conditions(&self) -> Result<MatchingConditions, GraphZetaError> {
        match self {
            ConditionKind::Star { nodes, lambda } => {
                let nb = nodes.len();
                let n = 2 * nb;
                let mut a = DMatrix::<f64>::zeros(n, n);
                let mut b = DMatrix::<f64>::zeros(n, n);
                // node rows: Dirichlet pins the value, Neumann the derivative
                for (i, cond) in nodes.iter().enumerate() {
                    match cond {
                        NodeCondition::Dirichlet => a[(i, i)] = 1.0,
                        NodeCondition::Neumann => b[(i, i)] = 1.0,
                    }
                }
                // center: B−1 continuity rows, then one current row
                for i in 0..nb.saturating_sub(1) {
                    a[(nb + i, nb + i)] = 1.0;
                    a[(nb + i, nb + i + 1)] = -1.0;
                }
                let last = n - 1;
                a[(last, nb)] = -lambda;
                for j in 0..nb {
                    b[(last, nb + j)] = 1.0;
                }
                MatchingConditions::from_real(&a, &b)
            }
            ConditionKind::StarCenter { a_c, b_c } => {
                let nb = a_c.nrows();
                if a_c.ncols() != nb || b_c.nrows() != nb || b_c.ncols() != nb {
                    return Err(GraphZetaError::DimensionMismatch {
                        expected: nb,
                        rows: b_c.nrows(),
                        cols: b_c.ncols(),
                    });
                }
                let n = 2 * nb;
                let mut a = DMatrix::<f64>::zeros(n, n);
                let mut b = DMatrix::<f64>::zeros(n, n);
                for i in 0..nb {
                    a[(i, i)] = 1.0; // Dirichlet nodes
                }
                for i in 0..nb {
                    for j in 0..nb {
                        a[(nb + i, nb + j)] = a_c[(i, j)];
                        b[(nb + i, nb + j)] = b_c[(i, j)];
                    }
                }
                MatchingConditions::from_real(&a, &b)
            }
            ConditionKind::General(mc) => Ok((**mc).clone()),
        }
    }
}

/// JSON-facing bond record.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BondSpec {
    pub length: f64,
}

/// JSON-facing vertex record: either a named preset (with optional `lambda`
/// for the δ center) or one raw matrix pair for the whole graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexSpec {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(rename = "raw_A", skip_serializing_if = "Option::is_none")]
    pub raw_a: Option<Vec<Vec<f64>>>,
    #[serde(rename = "raw_B", skip_serializing_if = "Option::is_none")]
    pub raw_b: Option<Vec<Vec<f64>>>,
}

/// Top-level graph description as read from / written to JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphDescription {
    pub bonds: Vec<BondSpec>,
    pub vertices: Vec<VertexSpec>,
}

fn matrix_from_rows(rows: &[Vec<f64>], what: &str) -> Result<DMatrix<f64>, GraphZetaError> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(GraphZetaError::MalformedInput(format!(
            "{what} must be a square matrix"
        )));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

impl GraphDescription {
    /// Interpret the description: lengths into a [`Graph`], vertices into a
    /// [`ConditionKind`].
    pub fn build(&self) -> Result<(Graph, ConditionKind), GraphZetaError> {
        let graph = Graph::new(self.bonds.iter().map(|b| b.length).collect())?;
        let nb = graph.num_bonds();

        if self.vertices.len() == 1 && self.vertices[0].raw_a.is_some() {
            let v = &self.vertices[0];
            let (Some(ra), Some(rb)) = (&v.raw_a, &v.raw_b) else {
                return Err(GraphZetaError::MalformedInput(
                    "raw_A and raw_B must both be present".into(),
                ));
            };
            let a = matrix_from_rows(ra, "raw_A")?;
            let b = matrix_from_rows(rb, "raw_B")?;
            if a.nrows() != 2 * nb {
                return Err(GraphZetaError::DimensionMismatch {
                    expected: 2 * nb,
                    rows: a.nrows(),
                    cols: a.ncols(),
                });
            }
            let mc = MatchingConditions::from_real(&a, &b)?;
            return Ok((graph, ConditionKind::General(Box::new(mc))));
        }

        if self.vertices.len() != nb + 1 {
            return Err(GraphZetaError::MalformedInput(format!(
                "expected {} node entries plus one center entry (or a single raw pair), got {} vertices",
                nb,
                self.vertices.len()
            )));
        }

        let mut nodes = Vec::with_capacity(nb);
        for (i, v) in self.vertices[..nb].iter().enumerate() {
            match v.preset.as_deref() {
                Some("dirichlet-node") => nodes.push(NodeCondition::Dirichlet),
                Some("neumann-node") => nodes.push(NodeCondition::Neumann),
                other => {
                    return Err(GraphZetaError::InvalidVertexSpec(format!(
                        "vertex {i}: expected node preset dirichlet-node|neumann-node, got {other:?}"
                    )))
                }
            }
        }
        let center = &self.vertices[nb];
        let lambda = match center.preset.as_deref() {
            Some("neumann-center") => 0.0,
            Some("delta-center") => center.lambda.ok_or_else(|| {
                GraphZetaError::InvalidVertexSpec("delta-center requires lambda".into())
            })?,
            other => {
                return Err(GraphZetaError::InvalidVertexSpec(format!(
                    "center: expected neumann-center|delta-center, got {other:?}"
                )))
            }
        };
        if !lambda.is_finite() {
            return Err(GraphZetaError::InvalidVertexSpec(format!(
                "center strength must be finite, got {lambda}"
            )));
        }
        Ok((graph, ConditionKind::Star { nodes, lambda }))
    }

    /// Description of a star graph with the given node conditions and δ
    /// strength (the inverse of [`GraphDescription::build`] for stars).
    pub fn star(lengths: &[f64], nodes: &[NodeCondition], lambda: f64) -> Self {
        let mut vertices: Vec<VertexSpec> = nodes
            .iter()
            .map(|n| VertexSpec {
                preset: Some(
                    match n {
                        NodeCondition::Dirichlet => "dirichlet-node",
                        NodeCondition::Neumann => "neumann-node",
                    }
                    .into(),
                ),
                lambda: None,
                raw_a: None,
                raw_b: None,
            })
            .collect();
        vertices.push(VertexSpec {
            preset: Some(if lambda == 0.0 {
                "neumann-center".into()
            } else {
                "delta-center".into()
            }),
            lambda: if lambda == 0.0 { None } else { Some(lambda) },
            raw_a: None,
            raw_b: None,
        });
        GraphDescription {
            bonds: lengths.iter().map(|&length| BondSpec { length }).collect(),
            vertices,
        }
    }
}

/// Seeded random self-adjoint pair: `A = Q diag(cos θ) Qᵀ`,
/// `B = Q diag(sin θ) Qᵀ` with `θ ∈ [π/2, π]` and `Q` orthogonal.  The
/// resulting operator is non-negative (Robin-type with non-negative
/// coefficient in the rotated frame), so the secular function is
/// sign-definite on the imaginary axis — suitable for property tests.
pub fn random_self_adjoint(dim: usize, seed: u64) -> MatchingConditions {
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gauss = DMatrix::<f64>::from_fn(dim, dim, |_, _| {
        // Box–Muller from two uniforms
        let u1: f64 = rng.gen_range(1e-12..1.0);
        let u2: f64 = rng.gen_range(0.0..1.0);
        (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
    });
    let q = gauss.qr().q();
    let theta: Vec<f64> = (0..dim)
        .map(|_| rng.gen_range(0.5 * std::f64::consts::PI..std::f64::consts::PI))
        .collect();
    let dc = DMatrix::<f64>::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        theta.iter().map(|t| t.cos()),
    ));
    let ds = DMatrix::<f64>::from_diagonal(&nalgebra::DVector::from_iterator(
        dim,
        theta.iter().map(|t| t.sin()),
    ));
    let a = &q * dc * q.transpose();
    let b = &q * ds * q.transpose();
    MatchingConditions::from_real(&a, &b).expect("construction is self-adjoint by design")
}
