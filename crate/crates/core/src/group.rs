//! Finite groups given by a multiplication table and numerical irreducible
//! representations, plus the versioned on-disk format for them.
//!
//! # File format
//!
//! A group data file is a JSON object:
//!
//! ```json
//! {
//!   "format": "ncmult-group",
//!   "version": 1,
//!   "name": "S3",
//!   "order": 6,
//!   "identity": 0,
//!   "mult_table": [0, 1, 2, ...],
//!   "irreps": [
//!     { "dim": 1, "matrices": [[[1.0, 0.0]], ...] }
//!   ],
//!   "checksum": "<sha256 hex>"
//! }
//! ```
//!
//! `mult_table` is row-major: entry `g·order + h` is the index of `gh`. Every irrep
//! lists one matrix per group element, in element order, each matrix as row-major
//! `[re, im]` pairs. `checksum` is the SHA-256 of the compact JSON serialization of
//! all other fields in the order above. Loading verifies the checksum and then
//! re-validates every group and representation invariant.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::algebra::{CMatrix, C64};
use crate::error::{Error, Result};

pub const FORMAT_NAME: &str = "ncmult-group";
pub const FORMAT_VERSION: u32 = 1;

const UNITARY_TOL: f64 = 1e-10;
const HOMOMORPHISM_TOL: f64 = 1e-10;
const ORTHOGONALITY_TOL: f64 = 1e-9;
const CLOSURE_TOL: f64 = 1e-9;

/// A unitary irreducible representation, one matrix per group element.
#[derive(Clone, Debug, PartialEq)]
pub struct Irrep {
    pub dim: usize,
    pub matrices: Vec<CMatrix>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupData {
    pub name: String,
    pub order: usize,
    pub identity: usize,
    /// Row-major `order × order` table; `mult_table[g * order + h]` is `gh`.
    pub mult_table: Vec<usize>,
    pub irreps: Vec<Irrep>,
}

impl FiniteGroupData {
    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mult_table[g * self.order + h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order)
            .find(|&h| self.mul(g, h) == self.identity)
            .expect("validated group has inverses")
    }

    pub fn irrep_dims(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.dim).collect()
    }

    fn invalid(&self, invariant: impl Into<String>) -> Error {
        Error::InvalidGroup {
            name: self.name.clone(),
            invariant: invariant.into(),
        }
    }

    /// Checks the group axioms exhaustively and every representation invariant.
    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        if n == 0 {
            return Err(self.invalid("order must be positive"));
        }
        if self.mult_table.len() != n * n {
            return Err(self.invalid(format!(
                "mult_table has {} entries, expected {}",
                self.mult_table.len(),
                n * n
            )));
        }
        if self.identity >= n {
            return Err(self.invalid("identity index out of range"));
        }
        if let Some(&bad) = self.mult_table.iter().find(|&&v| v >= n) {
            return Err(self.invalid(format!("mult_table entry {bad} out of range")));
        }
        for g in 0..n {
            if self.mul(self.identity, g) != g || self.mul(g, self.identity) != g {
                return Err(self.invalid(format!("identity: e·{g} or {g}·e differs from {g}")));
            }
        }
        for g in 0..n {
            for h in 0..n {
                let gh = self.mul(g, h);
                for k in 0..n {
                    if self.mul(gh, k) != self.mul(g, self.mul(h, k)) {
                        return Err(self.invalid(format!("associativity fails at ({g}, {h}, {k})")));
                    }
                }
            }
        }
        for g in 0..n {
            let has_inverse = (0..n).any(|h| self.mul(g, h) == self.identity && self.mul(h, g) == self.identity);
            if !has_inverse {
                return Err(self.invalid(format!("inverses: element {g} has no inverse")));
            }
        }

        for (pi, rep) in self.irreps.iter().enumerate() {
            if rep.dim == 0 || rep.matrices.len() != n {
                return Err(self.invalid(format!("irrep {pi}: expected {n} matrices of positive dimension")));
            }
            for (g, m) in rep.matrices.iter().enumerate() {
                if m.nrows() != rep.dim || m.ncols() != rep.dim {
                    return Err(self.invalid(format!("irrep {pi}: matrix {g} has wrong shape")));
                }
                let defect = (m.adjoint() * m - CMatrix::identity(rep.dim, rep.dim)).camax();
                if defect > UNITARY_TOL {
                    return Err(self.invalid(format!("unitarity: irrep {pi} at element {g} (defect {defect:.3e})")));
                }
            }
            for g in 0..n {
                for h in 0..n {
                    let lhs = &rep.matrices[g] * &rep.matrices[h];
                    let defect = (lhs - &rep.matrices[self.mul(g, h)]).camax();
                    if defect > HOMOMORPHISM_TOL {
                        return Err(self.invalid(format!(
                            "homomorphism: irrep {pi} fails at ({g}, {h}) (defect {defect:.3e})"
                        )));
                    }
                }
            }
        }

        let dim_sum: usize = self.irreps.iter().map(|r| r.dim * r.dim).sum();
        if dim_sum != n {
            return Err(self.invalid(format!("sum of squared irrep dimensions is {dim_sum}, expected {n}")));
        }

        // (1/|Γ|) Σ_g π(g)_ij conj(π'(g)_kl) = δ_ππ' δ_ik δ_jl / n_π
        let inv_n = 1.0 / n as f64;
        for (a, ra) in self.irreps.iter().enumerate() {
            for (b, rb) in self.irreps.iter().enumerate().skip(a) {
                for i in 0..ra.dim {
                    for j in 0..ra.dim {
                        for k in 0..rb.dim {
                            for l in 0..rb.dim {
                                let s: C64 = (0..n)
                                    .map(|g| ra.matrices[g][(i, j)] * rb.matrices[g][(k, l)].conj())
                                    .sum::<C64>()
                                    * inv_n;
                                let expected = if a == b && i == k && j == l {
                                    1.0 / ra.dim as f64
                                } else {
                                    0.0
                                };
                                if (s - C64::new(expected, 0.0)).norm() > ORTHOGONALITY_TOL {
                                    return Err(self.invalid(format!(
                                        "Schur orthogonality: irreps ({a}, {b}) entries ({i},{j}) ({k},{l})"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The cyclic group `Z_n` with characters `χ_k(g) = e^{2πi kg/n}`.
    pub fn cyclic(n: usize) -> Self {
        let mult_table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let irreps = (0..n)
            .map(|k| Irrep {
                dim: 1,
                matrices: (0..n)
                    .map(|g| CMatrix::from_element(1, 1, root_of_unity(k * g, n)))
                    .collect(),
            })
            .collect();
        Self {
            name: format!("Z{n}"),
            order: n,
            identity: 0,
            mult_table,
            irreps,
        }
    }

    /// Closes a set of generators under multiplication.
    ///
    /// `generators[s][π]` is the image of generator `s` in irrep `π`. The direct sum
    /// of all irreps is faithful, so elements are identified by their tuple of
    /// images. Elements are numbered in breadth-first order from the identity.
    pub fn from_generators(name: &str, dims: &[usize], generators: &[Vec<CMatrix>]) -> Result<Self> {
        let identity: Vec<CMatrix> = dims.iter().map(|&d| CMatrix::identity(d, d)).collect();
        let mut elements = vec![identity];
        let find = |elements: &[Vec<CMatrix>], x: &[CMatrix]| {
            elements
                .iter()
                .position(|e| e.iter().zip(x).all(|(a, b)| (a - b).camax() < CLOSURE_TOL))
        };
        let mut frontier = 0;
        while frontier < elements.len() {
            for gen in generators {
                let next: Vec<CMatrix> = elements[frontier].iter().zip(gen).map(|(a, b)| a * b).collect();
                if find(&elements, &next).is_none() {
                    elements.push(next);
                }
                if elements.len() > 4096 {
                    return Err(Error::InvalidGroup {
                        name: name.into(),
                        invariant: "generated group exceeds 4096 elements".into(),
                    });
                }
            }
            frontier += 1;
        }
        let order = elements.len();
        let mut mult_table = Vec::with_capacity(order * order);
        for g in &elements {
            for h in &elements {
                let gh: Vec<CMatrix> = g.iter().zip(h).map(|(a, b)| a * b).collect();
                mult_table.push(find(&elements, &gh).ok_or_else(|| Error::InvalidGroup {
                    name: name.into(),
                    invariant: "generated set is not closed".into(),
                })?);
            }
        }
        let irreps = dims
            .iter()
            .enumerate()
            .map(|(pi, &dim)| Irrep {
                dim,
                matrices: elements.iter().map(|e| e[pi].clone()).collect(),
            })
            .collect();
        let data = Self {
            name: name.into(),
            order,
            identity: 0,
            mult_table,
            irreps,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn to_json(&self) -> Result<String> {
        let payload = self.payload();
        let checksum = payload.checksum()?;
        let file = GroupFile { payload, checksum };
        let mut s = serde_json::to_string_pretty(&file)?;
        s.push('\n');
        Ok(s)
    }

    /// Parses, verifies the checksum, and validates.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: GroupFile = serde_json::from_str(text)?;
        let name = file.payload.name.clone();
        let invalid = |invariant: String| Error::InvalidGroup {
            name: name.clone(),
            invariant,
        };
        if file.payload.format != FORMAT_NAME {
            return Err(invalid(format!("unknown format `{}`", file.payload.format)));
        }
        if file.payload.version != FORMAT_VERSION {
            return Err(invalid(format!("unsupported version {}", file.payload.version)));
        }
        let expected = file.payload.checksum()?;
        if expected != file.checksum {
            return Err(invalid("checksum mismatch".into()));
        }
        let p = file.payload;
        let mut irreps = Vec::with_capacity(p.irreps.len());
        for (pi, r) in p.irreps.into_iter().enumerate() {
            let mut matrices = Vec::with_capacity(r.matrices.len());
            for m in r.matrices {
                if m.len() != r.dim * r.dim {
                    return Err(invalid(format!("irrep {pi}: matrix has {} entries", m.len())));
                }
                let entries: Vec<C64> = m.iter().map(|&[re, im]| C64::new(re, im)).collect();
                matrices.push(CMatrix::from_row_slice(r.dim, r.dim, &entries));
            }
            irreps.push(Irrep { dim: r.dim, matrices });
        }
        let data = Self {
            name: p.name,
            order: p.order,
            identity: p.identity,
            mult_table: p.mult_table,
            irreps,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| Error::io(path.as_ref(), e))?;
        Self::from_json(&text)
    }

    fn payload(&self) -> GroupPayload {
        GroupPayload {
            format: FORMAT_NAME.into(),
            version: FORMAT_VERSION,
            name: self.name.clone(),
            order: self.order,
            identity: self.identity,
            mult_table: self.mult_table.clone(),
            irreps: self
                .irreps
                .iter()
                .map(|r| IrrepFile {
                    dim: r.dim,
                    matrices: r
                        .matrices
                        .iter()
                        .map(|m| m.transpose().iter().map(|z| [z.re, z.im]).collect())
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GroupPayload {
    format: String,
    version: u32,
    name: String,
    order: usize,
    identity: usize,
    mult_table: Vec<usize>,
    irreps: Vec<IrrepFile>,
}

impl GroupPayload {
    fn checksum(&self) -> Result<String> {
        let bytes = serde_json::to_vec(self)?;
        Ok(hex::encode(Sha256::digest(&bytes)))
    }
}

#[derive(Serialize, Deserialize)]
struct IrrepFile {
    dim: usize,
    matrices: Vec<Vec<[f64; 2]>>,
}

#[derive(Serialize, Deserialize)]
struct GroupFile {
    #[serde(flatten)]
    payload: GroupPayload,
    checksum: String,
}

/// `e^{2πi k/n}`, with exact values on the axes.
pub fn root_of_unity(k: usize, n: usize) -> C64 {
    let k = k % n;
    if (4 * k).is_multiple_of(n) {
        return match 4 * k / n {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
    }
    C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

/// Names of the groups shipped as data files.
pub const SHIPPED_GROUPS: [&str; 4] = ["Z2xZ2", "S3", "D4", "Q8"];

/// Shipped group data, embedded at compile time.
pub fn shipped_group_json(name: &str) -> Option<&'static str> {
    match name {
        "Z2xZ2" => Some(include_str!("../data/groups/z2xz2.json")),
        "S3" => Some(include_str!("../data/groups/s3.json")),
        "D4" => Some(include_str!("../data/groups/d4.json")),
        "Q8" => Some(include_str!("../data/groups/q8.json")),
        _ => None,
    }
}

pub fn shipped_file_name(name: &str) -> String {
    format!("{}.json", name.to_lowercase())
}

/// Generator presentations from which the shipped data files are produced.
pub fn presentation(name: &str) -> Option<Result<FiniteGroupData>> {
    let one = |v: f64| CMatrix::from_element(1, 1, C64::new(v, 0.0));
    let m2 = |a: [C64; 4]| CMatrix::from_row_slice(2, 2, &a);
    let r = |v: f64| C64::new(v, 0.0);
    let i = |v: f64| C64::new(0.0, v);
    let z = C64::new(0.0, 0.0);
    let signs = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)];
    Some(match name {
        "Z2xZ2" => {
            let a = signs.iter().map(|s| one(s.0)).collect();
            let b = signs.iter().map(|s| one(s.1)).collect();
            FiniteGroupData::from_generators(name, &[1, 1, 1, 1], &[a, b])
        }
        "S3" => {
            let w = root_of_unity(1, 3);
            let rot = vec![one(1.0), one(1.0), m2([w, z, z, w.conj()])];
            let flip = vec![one(1.0), one(-1.0), m2([z, r(1.0), r(1.0), z])];
            FiniteGroupData::from_generators(name, &[1, 1, 2], &[rot, flip])
        }
        "D4" => {
            let mut rot: Vec<CMatrix> = signs.iter().map(|s| one(s.0)).collect();
            let mut flip: Vec<CMatrix> = signs.iter().map(|s| one(s.1)).collect();
            rot.push(m2([z, r(-1.0), r(1.0), z]));
            flip.push(m2([r(1.0), z, z, r(-1.0)]));
            FiniteGroupData::from_generators(name, &[1, 1, 1, 1, 2], &[rot, flip])
        }
        "Q8" => {
            let mut qi: Vec<CMatrix> = signs.iter().map(|s| one(s.0)).collect();
            let mut qj: Vec<CMatrix> = signs.iter().map(|s| one(s.1)).collect();
            qi.push(m2([i(1.0), z, z, i(-1.0)]));
            qj.push(m2([z, r(1.0), r(-1.0), z]));
            FiniteGroupData::from_generators(name, &[1, 1, 1, 1, 2], &[qi, qj])
        }
        _ => return None,
    })
}
