//! The GPT public-key cryptosystem over Gabidulin codes.
//!
//! The public key is `G_pub = S·[X | G_k]·P` with `S` a nonsingular row
//! scrambler over GF(2^N), `X` a `k × t1` distortion matrix, `G_k` the
//! generator of a Gabidulin code and `P` an invertible column scrambler over
//! GF(2). Ciphertexts are `m·G_pub + e` with `rank_norm(e) <= t2`.
//!
//! The distortion builders choose `X` so that the Frobenius-extended key
//! keeps a rank deficiency of `a` in its distortion part, which is what the
//! [`overbeck`](crate::overbeck) analyzer measures.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gabidulin::GabidulinCode;
use crate::matrix::{
    column_rank_base, random_independent, random_nonsingular_ext, random_vector_of_rank, vec_mul, vec_mul_base,
    BaseMatrix, ExtMatrix,
};
use crate::overbeck;

/// Resampling bound for key generation and the randomized builders.
pub const MAX_ATTEMPTS: usize = 100;

/// How the distortion matrix `X` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum XMode {
    /// Moore matrix of a rank-`t1` row plus base-field offsets of rank `t1 − a`.
    SmartSimple,
    /// `a` Frobenius-type columns mixed with `t1 − a` free columns.
    SmartGeneral,
    /// Low extension-field rank `⌊(t1 − a)/(n − k)⌋`.
    Kshevetskiy,
    /// Unstructured random `X`. Breakable; kept as a baseline.
    RandomNaive,
}

impl XMode {
    pub const ALL: [XMode; 4] = [XMode::SmartSimple, XMode::SmartGeneral, XMode::Kshevetskiy, XMode::RandomNaive];

    pub const fn name(self) -> &'static str {
        match self {
            XMode::SmartSimple => "smart_simple",
            XMode::SmartGeneral => "smart_general",
            XMode::Kshevetskiy => "kshevetskiy",
            XMode::RandomNaive => "random_naive",
        }
    }

    /// Modes whose keys are required to hit `rank(Y_ext) = t1 − a` exactly.
    pub const fn is_smart(self) -> bool {
        matches!(self, XMode::SmartSimple | XMode::SmartGeneral)
    }
}

impl fmt::Display for XMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for XMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<XMode> {
        XMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or(Error::InvalidParameters("unknown distortion mode"))
    }
}

/// Cryptosystem parameters. `degree` is the extension degree `N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GptParams {
    pub degree: u32,
    pub n: usize,
    pub k: usize,
    pub t1: usize,
    pub a: usize,
    pub t2_max: usize,
    pub x_mode: XMode,
}

impl GptParams {
    /// `N = n = 8, k = 4, t1 = 4, a = 2, t2 = 2` with the simple construction.
    pub const fn example_one() -> GptParams {
        GptParams {
            degree: 8,
            n: 8,
            k: 4,
            t1: 4,
            a: 2,
            t2_max: 2,
            x_mode: XMode::SmartSimple,
        }
    }

    pub const fn with_mode(self, x_mode: XMode) -> GptParams {
        GptParams { x_mode, ..self }
    }

    /// Public key size `k·(t1 + n)·N` in bits.
    pub const fn public_key_bits(&self) -> usize {
        self.k * (self.t1 + self.n) * self.degree as usize
    }

    /// Information rate `k / (t1 + n)`.
    pub fn rate(&self) -> f64 {
        self.k as f64 / (self.t1 + self.n) as f64
    }

    /// Correction radius `⌊(n − k)/2⌋` of the underlying code.
    pub const fn code_radius(&self) -> usize {
        (self.n - self.k) / 2
    }

    /// Number of Frobenius images stacked by the distinguisher, `n − k − 1`.
    pub const fn attack_depth(&self) -> usize {
        self.n - self.k - 1
    }

    /// Unavoidable GF(2) column-rank loss of `[X | G_k]` for the smart
    /// modes, `max(0, n + a − N)`.
    ///
    /// Every GF(2)-combination `c` of the Frobenius seeds that lands in the
    /// span of the support `g` cancels against a combination of `G_k`
    /// columns, and at least `n + a − N` independent such `c` survive the
    /// `t1 − a` (simple) or `a` (general) independent corrections.
    pub const fn column_rank_deficiency(&self) -> usize {
        if self.x_mode.is_smart() {
            (self.n + self.a).saturating_sub(self.degree as usize)
        } else {
            0
        }
    }

    /// Target extension-field rank of `X` for [`XMode::Kshevetskiy`].
    pub const fn kshevetskiy_rank(&self) -> usize {
        (self.t1 - self.a) / (self.n - self.k)
    }

    pub fn validate(&self) -> Result<()> {
        let GptParams { degree, n, k, t1, a, t2_max, x_mode } = *self;
        if degree == 0 || degree > crate::field::MAX_DEGREE {
            return Err(Error::DegreeOutOfRange(degree));
        }
        if k == 0 || k >= n || n > degree as usize {
            return Err(Error::InvalidParameters("need 1 <= k < n <= N"));
        }
        if n - k < 2 {
            return Err(Error::InvalidParameters("need n - k >= 2"));
        }
        if t1 == 0 {
            return Err(Error::InvalidParameters("need t1 >= 1"));
        }
        if a < 2 || a > t1 {
            return Err(Error::InvalidParameters("need 2 <= a <= t1"));
        }
        if t2_max > self.code_radius() {
            return Err(Error::InvalidParameters("need t2 <= (n - k) / 2"));
        }
        if n + t1 > k * degree as usize {
            return Err(Error::InvalidParameters("[X | G_k] cannot reach column rank n + t1"));
        }
        match x_mode {
            XMode::SmartSimple => {
                if t1 > degree as usize {
                    return Err(Error::InvalidParameters("smart_simple needs t1 <= N"));
                }
                if k - 1 < t1 - a {
                    return Err(Error::InvalidParameters("smart_simple needs k - 1 >= t1 - a"));
                }
            }
            XMode::SmartGeneral => {
                if k - 1 < t1 - a {
                    return Err(Error::InvalidParameters("smart_general needs k - 1 >= t1 - a"));
                }
            }
            XMode::Kshevetskiy => {
                if t1 <= n - k {
                    return Err(Error::InvalidParameters("kshevetskiy needs t1 > n - k"));
                }
                let r = self.kshevetskiy_rank();
                if r == 0 || r > k {
                    return Err(Error::InvalidParameters("kshevetskiy needs 1 <= (t1 - a) / (n - k) <= k"));
                }
                if t1 > r * degree as usize {
                    return Err(Error::InvalidParameters("kshevetskiy rank too small for column rank t1"));
                }
            }
            XMode::RandomNaive => {}
        }
        Ok(())
    }
}

/// The inputs a distortion matrix was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistortionRecord {
    SmartSimple {
        /// Row `m` of rank norm `t1`.
        seed_row: Vec<Elem>,
        /// Rows `s_1 … s_{k−1}` over GF(2).
        offsets: BaseMatrix,
    },
    SmartGeneral {
        /// `w_1 … w_a`, one per Frobenius-type column.
        frobenius_seeds: Vec<Elem>,
        /// The `k × (t1 − a)` non-Frobenius columns.
        free_columns: ExtMatrix,
        /// `a × (t1 − a)`: row `j` selects the free columns added to Frobenius column `j`.
        mixing: BaseMatrix,
    },
    Kshevetskiy {
        left: ExtMatrix,
        right: ExtMatrix,
    },
    RandomNaive {
        x: ExtMatrix,
    },
}

impl DistortionRecord {
    pub fn mode(&self) -> XMode {
        match self {
            DistortionRecord::SmartSimple { .. } => XMode::SmartSimple,
            DistortionRecord::SmartGeneral { .. } => XMode::SmartGeneral,
            DistortionRecord::Kshevetskiy { .. } => XMode::Kshevetskiy,
            DistortionRecord::RandomNaive { .. } => XMode::RandomNaive,
        }
    }

    /// Rebuilds `X`.
    pub fn distortion(&self, field: &Field) -> Result<ExtMatrix> {
        match self {
            DistortionRecord::SmartSimple { seed_row, offsets } => distortion_simple(field, seed_row, offsets),
            DistortionRecord::SmartGeneral {
                frobenius_seeds,
                free_columns,
                mixing,
            } => distortion_general(field, frobenius_seeds, free_columns, mixing),
            DistortionRecord::Kshevetskiy { left, right } => left.mul(field, right),
            DistortionRecord::RandomNaive { x } => Ok(x.clone()),
        }
    }
}

/// `X` with row 0 = `m` and row `i` = `σ^i(m) + s_i`.
pub fn distortion_simple(field: &Field, seed_row: &[Elem], offsets: &BaseMatrix) -> Result<ExtMatrix> {
    if offsets.cols() != seed_row.len() {
        return Err(Error::DimensionMismatch("offset rows differ in length from m"));
    }
    let k = offsets.rows() + 1;
    Ok(ExtMatrix::from_fn(k, seed_row.len(), |r, c| {
        let moore = field.frobenius(seed_row[c], r as i64);
        if r == 0 {
            moore
        } else {
            moore + Elem::from_bit(offsets.get(r - 1, c))
        }
    }))
}

/// `X = [W + F·Mᵀ | F]` where `W` holds the Frobenius-type columns of the
/// seeds, `F` the free columns and `M` the mixing pattern.
pub fn distortion_general(
    field: &Field,
    frobenius_seeds: &[Elem],
    free_columns: &ExtMatrix,
    mixing: &BaseMatrix,
) -> Result<ExtMatrix> {
    let a = frobenius_seeds.len();
    let free = free_columns.cols();
    if mixing.rows() != a || mixing.cols() != free {
        return Err(Error::DimensionMismatch("mixing pattern must be a × (t1 − a)"));
    }
    let k = free_columns.rows();
    let mut x = ExtMatrix::zeros(k, a + free);
    for r in 0..k {
        for (j, &w) in frobenius_seeds.iter().enumerate() {
            let mixed = (0..free)
                .filter(|&l| mixing.get(j, l))
                .fold(field.frobenius(w, r as i64), |acc, l| acc + free_columns.get(r, l));
            x.set(r, j, mixed);
        }
        for l in 0..free {
            x.set(r, a + l, free_columns.get(r, l));
        }
    }
    Ok(x)
}

pub fn build_x_simple<R: RngCore + ?Sized>(
    field: &Field,
    k: usize,
    t1: usize,
    a: usize,
    rng: &mut R,
) -> Result<(ExtMatrix, DistortionRecord)> {
    if a > t1 || k == 0 || k - 1 < t1 - a {
        return Err(Error::InvalidParameters("offsets cannot reach GF(2) rank t1 - a"));
    }
    let seed_row = random_independent(field, t1, rng)?;
    let offsets = BaseMatrix::random_of_rank(k - 1, t1, t1 - a, rng)?;
    let x = distortion_simple(field, &seed_row, &offsets)?;
    if column_rank_base(field, &x) != t1 {
        return Err(Error::ConstructionFailure("simple distortion lost column rank"));
    }
    Ok((x, DistortionRecord::SmartSimple { seed_row, offsets }))
}

pub fn build_x_general<R: RngCore + ?Sized>(
    field: &Field,
    k: usize,
    t1: usize,
    a: usize,
    rng: &mut R,
) -> Result<(ExtMatrix, DistortionRecord)> {
    if a > t1 || k < 2 || k - 1 < t1 - a {
        return Err(Error::InvalidParameters("general distortion needs a <= t1 and k - 1 >= t1 - a"));
    }
    let free = t1 - a;
    for _ in 0..MAX_ATTEMPTS {
        let frobenius_seeds: Vec<Elem> = (0..a).map(|_| field.random_nonzero(rng)).collect();
        let free_columns = ExtMatrix::random(field, k, free, rng);
        let mixing = BaseMatrix::random(a, free, rng);
        if free > 0 && (0..a).any(|j| mixing.row_is_zero(j)) {
            continue;
        }
        let x = distortion_general(field, &frobenius_seeds, &free_columns, &mixing)?;
        if column_rank_base(field, &x) != t1 {
            continue;
        }
        if overbeck::t_map(field, &x)?.rank(field) != free {
            continue;
        }
        let record = DistortionRecord::SmartGeneral {
            frobenius_seeds,
            free_columns,
            mixing,
        };
        return Ok((x, record));
    }
    Err(Error::ConstructionFailure("general distortion did not reach its rank targets"))
}

pub fn build_x_kshevetskiy<R: RngCore + ?Sized>(
    field: &Field,
    k: usize,
    t1: usize,
    a: usize,
    n: usize,
    rng: &mut R,
) -> Result<(ExtMatrix, DistortionRecord)> {
    if k >= n || a > t1 || t1 <= n - k {
        return Err(Error::InvalidParameters("kshevetskiy needs t1 > n - k"));
    }
    let r = (t1 - a) / (n - k);
    if r == 0 || r > k {
        return Err(Error::InvalidParameters("kshevetskiy needs 1 <= (t1 - a) / (n - k) <= k"));
    }
    for _ in 0..MAX_ATTEMPTS {
        let left = ExtMatrix::random(field, k, r, rng);
        let right = ExtMatrix::random(field, r, t1, rng);
        let x = left.mul(field, &right)?;
        if x.rank(field) == r && column_rank_base(field, &x) == t1 {
            return Ok((x, DistortionRecord::Kshevetskiy { left, right }));
        }
    }
    Err(Error::ConstructionFailure("low-rank distortion did not reach its rank targets"))
}

pub fn build_x_random_naive<R: RngCore + ?Sized>(
    field: &Field,
    k: usize,
    t1: usize,
    rng: &mut R,
) -> Result<(ExtMatrix, DistortionRecord)> {
    if t1 > k * field.degree() as usize {
        return Err(Error::InvalidParameters("t1 exceeds k·N"));
    }
    loop {
        let x = ExtMatrix::random(field, k, t1, rng);
        if column_rank_base(field, &x) == t1 {
            return Ok((x.clone(), DistortionRecord::RandomNaive { x }));
        }
    }
}

fn build_x<R: RngCore + ?Sized>(field: &Field, params: &GptParams, rng: &mut R) -> Result<(ExtMatrix, DistortionRecord)> {
    let GptParams { n, k, t1, a, .. } = *params;
    match params.x_mode {
        XMode::SmartSimple => build_x_simple(field, k, t1, a, rng),
        XMode::SmartGeneral => build_x_general(field, k, t1, a, rng),
        XMode::Kshevetskiy => build_x_kshevetskiy(field, k, t1, a, n, rng),
        XMode::RandomNaive => build_x_random_naive(field, k, t1, rng),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GptPublicKey {
    field: Field,
    params: GptParams,
    g_pub: ExtMatrix,
}

impl GptPublicKey {
    pub fn from_parts(field: Field, params: GptParams, g_pub: ExtMatrix) -> Result<GptPublicKey> {
        params.validate()?;
        if field.degree() != params.degree {
            return Err(Error::InvalidParameters("field degree differs from N"));
        }
        if g_pub.rows() != params.k || g_pub.cols() != params.n + params.t1 {
            return Err(Error::DimensionMismatch("public generator must be k × (n + t1)"));
        }
        if g_pub.entries().iter().any(|e| e.value() >= field.size()) {
            return Err(Error::InvalidParameters("public generator entry outside the field"));
        }
        Ok(GptPublicKey { field, params, g_pub })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn params(&self) -> &GptParams {
        &self.params
    }

    pub fn generator(&self) -> &ExtMatrix {
        &self.g_pub
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GptPrivateKey {
    field: Field,
    params: GptParams,
    code: GabidulinCode,
    s: ExtMatrix,
    s_inv: ExtMatrix,
    p: BaseMatrix,
    p_inv: BaseMatrix,
    distortion: Option<(ExtMatrix, DistortionRecord)>,
}

impl GptPrivateKey {
    /// Reassembles a private key from stored parts, recomputing inverses.
    pub fn from_parts(
        field: Field,
        params: GptParams,
        support: Vec<Elem>,
        s: ExtMatrix,
        p: BaseMatrix,
        record: Option<DistortionRecord>,
    ) -> Result<GptPrivateKey> {
        params.validate()?;
        if field.degree() != params.degree {
            return Err(Error::InvalidParameters("field degree differs from N"));
        }
        let code = GabidulinCode::new(field, params.n, params.k, support)?;
        if s.rows() != params.k || s.cols() != params.k {
            return Err(Error::DimensionMismatch("row scrambler must be k × k"));
        }
        let size = params.n + params.t1;
        if p.rows() != size || p.cols() != size {
            return Err(Error::DimensionMismatch("column scrambler must be (n + t1) × (n + t1)"));
        }
        let s_inv = s.inverse(&field).ok_or(Error::Singular)?;
        let p_inv = p.inverse().ok_or(Error::Singular)?;
        let distortion = match record {
            Some(record) => {
                let x = record.distortion(&field)?;
                if x.rows() != params.k || x.cols() != params.t1 {
                    return Err(Error::DimensionMismatch("distortion must be k × t1"));
                }
                Some((x, record))
            }
            None => None,
        };
        Ok(GptPrivateKey {
            field,
            params,
            code,
            s,
            s_inv,
            p,
            p_inv,
            distortion,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn params(&self) -> &GptParams {
        &self.params
    }

    pub fn code(&self) -> &GabidulinCode {
        &self.code
    }

    pub fn row_scrambler(&self) -> &ExtMatrix {
        &self.s
    }

    pub fn column_scrambler(&self) -> &BaseMatrix {
        &self.p
    }

    pub fn column_scrambler_inverse(&self) -> &BaseMatrix {
        &self.p_inv
    }

    pub fn distortion(&self) -> Option<&ExtMatrix> {
        self.distortion.as_ref().map(|(x, _)| x)
    }

    pub fn distortion_record(&self) -> Option<&DistortionRecord> {
        self.distortion.as_ref().map(|(_, r)| r)
    }

    /// Drops `X`; decryption does not need it, but the Y_ext audit and
    /// [`public_key`](Self::public_key) do.
    pub fn scrub(&mut self) {
        self.distortion = None;
    }

    /// `[X | G_k]`.
    pub fn unscrambled_generator(&self) -> Result<ExtMatrix> {
        let x = self.distortion().ok_or(Error::DistortionScrubbed)?;
        x.hstack(self.code.generator())
    }

    /// Recomputes `G_pub = S·[X | G_k]·P`.
    pub fn public_key(&self) -> Result<GptPublicKey> {
        let g_pub = self.s.mul(&self.field, &self.unscrambled_generator()?)?.mul_base(&self.p)?;
        Ok(GptPublicKey {
            field: self.field,
            params: self.params,
            g_pub,
        })
    }

    /// Checks every rank invariant a published key must satisfy.
    pub fn check_invariants(&self) -> Result<()> {
        let f = &self.field;
        let GptParams { n, k, t1, a, x_mode, .. } = self.params;
        let x = self.distortion().ok_or(Error::DistortionScrubbed)?;
        if column_rank_base(f, x) != t1 {
            return Err(Error::ConstructionFailure("column rank of X is not t1"));
        }
        if column_rank_base(f, &self.unscrambled_generator()?) != n + t1 - self.params.column_rank_deficiency() {
            return Err(Error::ConstructionFailure("column rank of [X | G_k] below its attainable maximum"));
        }
        if self.public_key()?.generator().rank(f) != k {
            return Err(Error::ConstructionFailure("public generator is rank deficient"));
        }
        let rk = overbeck::y_ext_rank(f, x, self.params.attack_depth())?;
        match x_mode {
            XMode::SmartSimple | XMode::SmartGeneral if rk != t1 - a => {
                Err(Error::ConstructionFailure("rank of Y_ext is not t1 - a"))
            }
            XMode::Kshevetskiy if t1 - rk < a => Err(Error::ConstructionFailure("rank deficiency of Y_ext below a")),
            _ => Ok(()),
        }
    }
}

/// Generates a key pair, resampling up to [`MAX_ATTEMPTS`] times until all
/// rank invariants hold.
pub fn keygen<R: RngCore + ?Sized>(field: &Field, params: &GptParams, rng: &mut R) -> Result<(GptPublicKey, GptPrivateKey)> {
    params.validate()?;
    if field.degree() != params.degree {
        return Err(Error::InvalidParameters("field degree differs from N"));
    }
    for _ in 0..MAX_ATTEMPTS {
        let code = GabidulinCode::random(*field, params.n, params.k, rng)?;
        let (s, s_inv) = random_nonsingular_ext(field, params.k, rng);
        let (p, p_inv) = BaseMatrix::random_invertible(params.n + params.t1, rng);
        let distortion = match build_x(field, params, rng) {
            Ok(d) => d,
            Err(Error::ConstructionFailure(_)) => continue,
            Err(e) => return Err(e),
        };
        let private = GptPrivateKey {
            field: *field,
            params: *params,
            code,
            s,
            s_inv,
            p,
            p_inv,
            distortion: Some(distortion),
        };
        match private.check_invariants() {
            Ok(()) => return Ok((private.public_key()?, private)),
            Err(Error::ConstructionFailure(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::KeygenExhausted(MAX_ATTEMPTS))
}

/// `c = m·G_pub + e` with a fresh error of rank `t2` (default `t2_max`).
pub fn encrypt<R: RngCore + ?Sized>(
    key: &GptPublicKey,
    message: &[Elem],
    t2: Option<usize>,
    rng: &mut R,
) -> Result<Vec<Elem>> {
    let t2 = t2.unwrap_or(key.params.t2_max);
    if t2 > key.params.t2_max {
        return Err(Error::InvalidParameters("error rank exceeds the sender budget"));
    }
    let error = random_vector_of_rank(&key.field, key.params.n + key.params.t1, t2, rng)?;
    encrypt_with_error(key, message, &error)
}

/// `c = m·G_pub + e` for a caller-chosen error.
pub fn encrypt_with_error(key: &GptPublicKey, message: &[Elem], error: &[Elem]) -> Result<Vec<Elem>> {
    if message.len() != key.params.k {
        return Err(Error::DimensionMismatch("message length differs from k"));
    }
    if error.len() != key.params.n + key.params.t1 {
        return Err(Error::DimensionMismatch("error length differs from n + t1"));
    }
    let mut c = vec_mul(&key.field, message, &key.g_pub)?;
    for (ci, &ei) in c.iter_mut().zip(error) {
        *ci += ei;
    }
    Ok(c)
}

/// Unscrambles with `P⁻¹`, decodes the last `n` coordinates and removes `S`.
pub fn decrypt(key: &GptPrivateKey, ciphertext: &[Elem]) -> Result<Vec<Elem>> {
    let GptParams { n, t1, .. } = key.params;
    if ciphertext.len() != n + t1 {
        return Err(Error::DimensionMismatch("ciphertext length differs from n + t1"));
    }
    if ciphertext.iter().any(|e| e.value() >= key.field.size()) {
        return Err(Error::InvalidParameters("ciphertext entry outside the field"));
    }
    let unscrambled = vec_mul_base(ciphertext, &key.p_inv)?;
    let decoded = key.code.decode(&unscrambled[t1..])?;
    vec_mul(&key.field, &decoded.message, &key.s_inv)
}
