//! Structural analysis of GPT keys through Frobenius-extended generators.
//!
//! Stacking `σ^0(G_pub) … σ^u(G_pub)` with `u = n − k − 1` collapses the
//! Gabidulin part to an `(n, n−1)` Moore code while the distortion part
//! contributes `rank(Y_ext)` rows, where `Y = T(X) = σ(X₁) − X₂`. When
//! `rank(Y_ext) = t1` the right kernel of the extended key is a single line
//! and reveals the secret code; a deficiency of `a` leaves `q^(aN)`
//! candidates instead.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gabidulin::moore_matrix;
use crate::gpt::{GptParams, GptPrivateKey, GptPublicKey};
use crate::matrix::{base_mul_vec, column_rank_base, vec_mul, BaseMatrix, ExtMatrix};

/// A key resists the distinguisher in practice when `a·N` reaches this many bits.
pub const SECURITY_THRESHOLD_BITS: usize = 60;

/// `T(X) = σ(X without its last row) − (X without its first row)`.
pub fn t_map(field: &Field, x: &ExtMatrix) -> Result<ExtMatrix> {
    let k = x.rows();
    if k < 2 {
        return Err(Error::InvalidParameters("T is defined for k >= 2"));
    }
    let upper = x.row_range(0, k - 1).frobenius(field, 1);
    upper.add(&x.row_range(1, k))
}

/// Vertical stack of `σ^i(m)` for `i = 0..=u`.
pub fn extend_matrix(field: &Field, m: &ExtMatrix, u: usize) -> ExtMatrix {
    stack_frobenius(field, m, u + 1)
}

/// Vertical stack of `σ^i(y)` for `i = 0..u`.
pub fn y_ext(field: &Field, y: &ExtMatrix, u: usize) -> Result<ExtMatrix> {
    if u == 0 {
        return Err(Error::InvalidParameters("Y_ext needs at least one block"));
    }
    Ok(stack_frobenius(field, y, u))
}

fn stack_frobenius(field: &Field, m: &ExtMatrix, blocks: usize) -> ExtMatrix {
    let rows = m.rows();
    ExtMatrix::from_fn(rows * blocks, m.cols(), |r, c| {
        field.frobenius(m.get(r % rows, c), (r / rows) as i64)
    })
}

/// `rank(Y_ext)` over GF(2^N) for the distortion `x` with `u` blocks.
pub fn y_ext_rank(field: &Field, x: &ExtMatrix, u: usize) -> Result<usize> {
    Ok(y_ext(field, &t_map(field, x)?, u)?.rank(field))
}

/// Order-of-magnitude cost `log2(2^(a·N)·(n + t1)^3)`.
pub fn work_factor_log2(a_effective: usize, degree: u32, n: usize, t1: usize) -> f64 {
    (a_effective * degree as usize) as f64 + 3.0 * libm::log2((n + t1) as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SecurityReport {
    pub params: GptParams,
    /// Number of stacked Frobenius images `u`.
    pub depth: usize,
    pub rk_y_ext: usize,
    pub a_effective: usize,
    pub kernel_dim: usize,
    pub public_column_rank: usize,
    pub work_factor_log2: f64,
    pub secure: bool,
}

impl SecurityReport {
    /// `a_effective · N`, the exponent of the exhaustive search.
    pub fn search_bits(&self) -> usize {
        self.a_effective * self.params.degree as usize
    }
}

/// Full audit of a private key at depth `n − k − 1`.
pub fn security_report(key: &GptPrivateKey) -> Result<SecurityReport> {
    security_report_at_depth(key, key.params().attack_depth())
}

pub fn security_report_at_depth(key: &GptPrivateKey, depth: usize) -> Result<SecurityReport> {
    let field = key.field();
    let params = *key.params();
    let x = key.distortion().ok_or(Error::DistortionScrubbed)?;
    let rk_y_ext = y_ext_rank(field, x, depth)?;
    let a_effective = params.t1 - rk_y_ext;
    let distinguisher = distinguisher_attack_at_depth(&key.public_key()?, depth);
    Ok(SecurityReport {
        params,
        depth,
        rk_y_ext,
        a_effective,
        kernel_dim: distinguisher.kernel_dim(),
        public_column_rank: distinguisher.public_column_rank,
        work_factor_log2: work_factor_log2(a_effective, params.degree, params.n, params.t1),
        secure: a_effective * params.degree as usize >= SECURITY_THRESHOLD_BITS,
    })
}

/// Right kernel of the extended public key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distinguisher {
    pub depth: usize,
    pub kernel_basis: Vec<Vec<Elem>>,
    /// GF(2) column rank of `G_pub`; below `n + t1` an attacker can zero
    /// columns with a base-field transform before extending.
    pub public_column_rank: usize,
}

impl Distinguisher {
    pub fn kernel_dim(&self) -> usize {
        self.kernel_basis.len()
    }

    /// A one-dimensional kernel pins down the secret code in polynomial time.
    pub fn attack_feasible(&self) -> bool {
        self.kernel_dim() == 1
    }

    /// The unique kernel direction when the attack is feasible.
    pub fn candidate(&self) -> Option<&[Elem]> {
        match self.kernel_basis.as_slice() {
            [u] => Some(u),
            _ => None,
        }
    }

    /// `log2` of the number of candidate `y` vectors an attacker must try,
    /// `(dim − 1)·N`.
    pub fn search_space_log2(&self, degree: u32) -> usize {
        self.kernel_dim().saturating_sub(1) * degree as usize
    }
}

/// Kernel distinguisher from public data only, at depth `n − k − 1`.
pub fn distinguisher_attack(key: &GptPublicKey) -> Distinguisher {
    distinguisher_attack_at_depth(key, key.params().attack_depth())
}

pub fn distinguisher_attack_at_depth(key: &GptPublicKey, depth: usize) -> Distinguisher {
    let extended = extend_matrix(key.field(), key.generator(), depth);
    Distinguisher {
        depth,
        kernel_basis: extended.right_kernel(key.field()),
        public_column_rank: column_rank_base(key.field(), key.generator()),
    }
}

/// Checks with private data that `u` exposes the secret code: `P·uᵀ` must
/// vanish on the distortion coordinates and its last `n` coordinates `h`
/// must satisfy `G_{n−1}·hᵀ = 0`.
pub fn verify_break(key: &GptPrivateKey, u: &[Elem]) -> Result<bool> {
    let GptParams { n, t1, .. } = *key.params();
    if u.len() != n + t1 {
        return Err(Error::DimensionMismatch("kernel vector length differs from n + t1"));
    }
    if u.iter().all(|e| e.is_zero()) {
        return Err(Error::InvalidParameters("the zero vector is not a kernel direction"));
    }
    let field = key.field();
    let p: &BaseMatrix = key.column_scrambler();
    let image = base_mul_vec(p, u)?;
    if image[..t1].iter().any(|e| !e.is_zero()) {
        return Ok(false);
    }
    let h = &image[t1..];
    let moore = moore_matrix(field, key.code().support(), n - 1, 0);
    let check = vec_mul(field, h, &moore.transpose())?;
    Ok(check.iter().all(|e| e.is_zero()))
}
