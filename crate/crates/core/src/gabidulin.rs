//! Gabidulin (MRD) codes in the rank metric.
//!
//! The generator is the Moore matrix of a support vector `g` whose entries
//! are linearly independent over GF(2); the parity-check matrix is the Moore
//! matrix of a dual vector `h`. Decoding is syndrome based: find the
//! linearized error-span polynomial, take its root space as the error
//! values, then solve for the error locations.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::matrix::{rank_norm, vec_mul, BaseMatrix, ExtMatrix};

/// `rows × v.len()` matrix whose row `i` is `σ^(start + i)(v)`.
pub fn moore_matrix(field: &Field, v: &[Elem], rows: usize, start: i64) -> ExtMatrix {
    ExtMatrix::from_fn(rows, v.len(), |r, c| field.frobenius(v[c], start + r as i64))
}

/// A decoded word: `received = message·G + error`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub message: Vec<Elem>,
    pub error: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GabidulinCode {
    field: Field,
    n: usize,
    k: usize,
    support: Vec<Elem>,
    dual: Vec<Elem>,
    generator: ExtMatrix,
    parity_check: ExtMatrix,
}

impl GabidulinCode {
    /// Code of length `n` and dimension `k` with the given support `g`.
    pub fn new(field: Field, n: usize, k: usize, support: Vec<Elem>) -> Result<GabidulinCode> {
        if k == 0 || k >= n || n > field.degree() as usize {
            return Err(Error::InvalidParameters("Gabidulin code needs 1 <= k < n <= N"));
        }
        if support.len() != n {
            return Err(Error::DimensionMismatch("support length differs from n"));
        }
        if support.iter().any(|e| e.value() >= field.size()) {
            return Err(Error::InvalidParameters("support entry outside the field"));
        }
        if rank_norm(&field, &support) != n {
            return Err(Error::DependentSupport);
        }
        let generator = moore_matrix(&field, &support, k, 0);
        let dual = dual_vector(&field, &support, k)?;
        let parity_check = moore_matrix(&field, &dual, n - k, 0);
        Ok(GabidulinCode {
            field,
            n,
            k,
            support,
            dual,
            generator,
            parity_check,
        })
    }

    /// Code with a uniformly sampled support.
    pub fn random<R: RngCore + ?Sized>(field: Field, n: usize, k: usize, rng: &mut R) -> Result<GabidulinCode> {
        if n > field.degree() as usize {
            return Err(Error::InvalidParameters("Gabidulin code needs n <= N"));
        }
        let support = crate::matrix::random_independent(&field, n, rng)?;
        GabidulinCode::new(field, n, k, support)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// Minimum rank distance `n − k + 1`.
    pub fn distance(&self) -> usize {
        self.n - self.k + 1
    }

    /// Unique-decoding radius `⌊(n − k)/2⌋`.
    pub fn radius(&self) -> usize {
        (self.n - self.k) / 2
    }

    pub fn support(&self) -> &[Elem] {
        &self.support
    }

    /// Row 0 of the parity-check matrix.
    pub fn dual(&self) -> &[Elem] {
        &self.dual
    }

    pub fn generator(&self) -> &ExtMatrix {
        &self.generator
    }

    pub fn parity_check(&self) -> &ExtMatrix {
        &self.parity_check
    }

    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        if message.len() != self.k {
            return Err(Error::DimensionMismatch("message length differs from k"));
        }
        vec_mul(&self.field, message, &self.generator)
    }

    /// `s_j = Σ_i y_i·σ^j(h_i)` for `j = 0..n−k`.
    pub fn syndromes(&self, received: &[Elem]) -> Result<Vec<Elem>> {
        if received.len() != self.n {
            return Err(Error::DimensionMismatch("received word length differs from n"));
        }
        vec_mul(&self.field, received, &self.parity_check.transpose())
    }

    /// Recovers the message and error for any word within rank distance
    /// [`radius`](Self::radius) of a codeword.
    pub fn decode(&self, received: &[Elem]) -> Result<Decoded> {
        let syndromes = self.syndromes(received)?;
        if syndromes.iter().all(|s| s.is_zero()) {
            return Ok(Decoded {
                message: self.unencode(received)?,
                error: vec![Elem::ZERO; self.n],
            });
        }
        for rank in (1..=self.radius()).rev() {
            let Some(error) = self.error_of_rank(&syndromes, rank) else {
                continue;
            };
            let codeword: Vec<Elem> = received.iter().zip(&error).map(|(&y, &e)| y - e).collect();
            if !self.syndromes(&codeword)?.iter().all(|s| s.is_zero()) {
                continue;
            }
            if rank_norm(&self.field, &error) > self.radius() {
                continue;
            }
            return Ok(Decoded {
                message: self.unencode(&codeword)?,
                error,
            });
        }
        Err(Error::DecodingFailure {
            radius: self.radius(),
        })
    }

    /// Candidate error of rank exactly `rank` consistent with `syndromes`.
    fn error_of_rank(&self, syndromes: &[Elem], rank: usize) -> Option<Vec<Elem>> {
        let f = &self.field;
        let redundancy = self.n - self.k;

        // Σ_{i<rank} Λ_i σ^i(s_{j−i}) = σ^rank(s_{j−rank}),  j = rank..n−k−1
        let equations = redundancy - rank;
        let system = ExtMatrix::from_fn(equations, rank, |r, i| {
            f.frobenius(syndromes[rank + r - i], i as i64)
        });
        if system.rank(f) < rank {
            return None;
        }
        let rhs: Vec<Elem> = (0..equations)
            .map(|r| f.frobenius(syndromes[r], rank as i64))
            .collect();
        let mut span_poly = system.solve(f, &rhs)?;
        span_poly.push(Elem::ONE);

        let values = self.root_space(&span_poly);
        if values.len() != rank {
            return None;
        }

        // σ^{−j}(s_j) = Σ_p σ^{−j}(E_p)·z_p
        let moore = ExtMatrix::from_fn(redundancy, rank, |j, p| f.frobenius(values[p], -(j as i64)));
        let rhs: Vec<Elem> = (0..redundancy)
            .map(|j| f.frobenius(syndromes[j], -(j as i64)))
            .collect();
        let locators = moore.solve(f, &rhs)?;

        // z_p = Σ_i Y_{p,i} h_i over GF(2)
        let degree = f.degree() as usize;
        let dual_bits = BaseMatrix::from_fn(degree, self.n, |b, i| self.dual[i].bit(b as u32));
        let mut error = vec![Elem::ZERO; self.n];
        for (p, z) in locators.iter().enumerate() {
            let target: Vec<bool> = (0..degree).map(|b| z.bit(b as u32)).collect();
            let row = dual_bits.solve(&target)?;
            for (e, &set) in error.iter_mut().zip(&row) {
                if set {
                    *e += values[p];
                }
            }
        }
        Some(error)
    }

    /// GF(2)-basis of the roots of `Σ_i c_i x^(2^i)`.
    fn root_space(&self, coeffs: &[Elem]) -> Vec<Elem> {
        let f = &self.field;
        let degree = f.degree() as usize;
        let images: Vec<Elem> = (0..degree)
            .map(|b| {
                let x = f.from_coordinates(1 << b);
                coeffs
                    .iter()
                    .enumerate()
                    .fold(Elem::ZERO, |acc, (i, &c)| acc + f.mul(c, f.frobenius(x, i as i64)))
            })
            .collect();
        let map = BaseMatrix::from_fn(degree, degree, |r, c| images[c].bit(r as u32));
        let kernel = map.kernel();
        (0..kernel.rows())
            .map(|i| {
                let bits = (0..degree).fold(0u64, |acc, b| acc | (kernel.get(i, b) as u64) << b);
                f.from_coordinates(bits)
            })
            .collect()
    }

    /// Message of a codeword, via the invertible leading `k × k` block of
    /// the generator.
    fn unencode(&self, codeword: &[Elem]) -> Result<Vec<Elem>> {
        self.generator
            .transpose()
            .solve(&self.field, codeword)
            .ok_or(Error::ConstructionFailure("codeword outside the code"))
    }
}

/// Row 0 `h` of a parity-check matrix for the code with support `g` and
/// dimension `k`: the kernel of the `(n−1) × n` Moore matrix with rows
/// `σ^(j − (n−k−1))(g)`, `j = 0..n−1`.
fn dual_vector(field: &Field, support: &[Elem], k: usize) -> Result<Vec<Elem>> {
    let n = support.len();
    let shifted = moore_matrix(field, support, n - 1, -((n - k - 1) as i64));
    let kernel = shifted.right_kernel(field);
    let [h] = kernel.as_slice() else {
        return Err(Error::ConstructionFailure("dual kernel is not one-dimensional"));
    };
    if rank_norm(field, h) != n {
        return Err(Error::ConstructionFailure("dual vector is not independent over GF(2)"));
    }
    Ok(h.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_vector_of_rank, rank_distance};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn code(n: usize, k: usize, seed: u64) -> GabidulinCode {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        GabidulinCode::random(Field::gf256(), n, k, &mut rng).unwrap()
    }

    #[test]
    fn generator_rows_are_frobenius_powers() {
        let f = Field::gf256();
        let g: Vec<Elem> = (0..8).map(|i| f.from_coordinates(1 << i)).collect();
        let c = GabidulinCode::new(f, 8, 4, g.clone()).unwrap();
        for i in 0..4 {
            for (j, &gj) in g.iter().enumerate() {
                assert_eq!(c.generator().get(i, j), f.frobenius(gj, i as i64));
            }
        }
        assert_eq!(c.parity_check().rows(), 4);
        assert_eq!(c.radius(), 2);
    }

    #[test]
    fn rejects_invalid_shapes_and_supports() {
        let f = Field::gf256();
        let g: Vec<Elem> = (0..4).map(|i| f.from_coordinates(1 << i)).collect();
        assert!(GabidulinCode::new(f, 4, 4, g.clone()).is_err());
        assert!(GabidulinCode::new(f, 4, 0, g.clone()).is_err());
        assert!(GabidulinCode::new(f, 9, 3, vec![Elem::ONE; 9]).is_err());
        let mut dependent = g.clone();
        dependent[3] = dependent[0] + dependent[1];
        assert_eq!(GabidulinCode::new(f, 4, 2, dependent), Err(Error::DependentSupport));
    }

    #[test]
    fn single_row_parity_check_when_k_is_n_minus_1() {
        let c = code(6, 5, 1);
        assert_eq!(c.parity_check().rows(), 1);
    }

    #[test]
    fn parity_check_is_orthogonal_and_dual_is_independent() {
        let f = Field::gf256();
        for seed in 0..50 {
            let n = 2 + (seed as usize % 7);
            let k = 1 + (seed as usize % (n - 1));
            let c = code(n, k, seed);
            let prod = c.generator().mul(&f, &c.parity_check().transpose()).unwrap();
            assert!(prod.is_zero());
            assert_eq!(rank_norm(&f, c.dual()), n);
        }
    }

    #[test]
    fn two_by_one_dual_is_orthogonal_to_support() {
        let f = Field::gf256();
        let c = GabidulinCode::new(f, 2, 1, vec![Elem::ONE, f.alpha()]).unwrap();
        let h = c.dual();
        assert_eq!(h[0] + f.mul(f.alpha(), h[1]), Elem::ZERO);
    }

    #[test]
    fn encode_examples() {
        let f = Field::gf256();
        let c = code(8, 4, 3);
        assert_eq!(c.encode(&[Elem::ZERO; 4]).unwrap(), vec![Elem::ZERO; 8]);
        assert_eq!(c.encode(&[Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO]).unwrap(), c.support());
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let a: Vec<Elem> = (0..4).map(|_| f.random(&mut rng)).collect();
        let b: Vec<Elem> = (0..4).map(|_| f.random(&mut rng)).collect();
        let sum: Vec<Elem> = a.iter().zip(&b).map(|(&x, &y)| x + y).collect();
        let lhs = c.encode(&sum).unwrap();
        let rhs: Vec<Elem> = c
            .encode(&a)
            .unwrap()
            .iter()
            .zip(c.encode(&b).unwrap())
            .map(|(&x, y)| x + y)
            .collect();
        assert_eq!(lhs, rhs);
        assert!(c.encode(&[Elem::ONE; 3]).is_err());
    }

    #[test]
    fn syndromes_depend_only_on_the_error() {
        let f = Field::gf256();
        let c = code(8, 4, 5);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let m: Vec<Elem> = (0..4).map(|_| f.random(&mut rng)).collect();
            let cw = c.encode(&m).unwrap();
            assert!(c.syndromes(&cw).unwrap().iter().all(|s| s.is_zero()));
            let e = random_vector_of_rank(&f, 8, 3, &mut rng).unwrap();
            let y: Vec<Elem> = cw.iter().zip(&e).map(|(&a, &b)| a + b).collect();
            assert_eq!(c.syndromes(&y).unwrap(), c.syndromes(&e).unwrap());
        }
    }

    #[test]
    fn decodes_zero_error() {
        let f = Field::gf256();
        let c = code(8, 4, 7);
        let m = [f.alpha(), Elem::ONE, Elem::ZERO, f.alpha_pow(100)];
        let d = c.decode(&c.encode(&m).unwrap()).unwrap();
        assert_eq!(d.message, m);
        assert_eq!(d.error, vec![Elem::ZERO; 8]);
    }

    #[test]
    fn decodes_every_error_rank_up_to_radius() {
        let f = Field::gf256();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (n, k) in [(8, 4), (8, 2), (7, 2), (5, 1), (6, 3)] {
            let c = code(n, k, (n * 10 + k) as u64);
            for r in 0..=c.radius() {
                for _ in 0..20 {
                    let m: Vec<Elem> = (0..k).map(|_| f.random(&mut rng)).collect();
                    let e = random_vector_of_rank(&f, n, r, &mut rng).unwrap();
                    let y: Vec<Elem> = c.encode(&m).unwrap().iter().zip(&e).map(|(&a, &b)| a + b).collect();
                    let d = c.decode(&y).unwrap();
                    assert_eq!(d.message, m);
                    assert_eq!(d.error, e);
                }
            }
        }
    }

    #[test]
    fn errors_beyond_radius_never_decode_to_a_near_codeword() {
        let f = Field::gf256();
        let c = code(8, 4, 9);
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..50 {
            let m: Vec<Elem> = (0..4).map(|_| f.random(&mut rng)).collect();
            let e = random_vector_of_rank(&f, 8, 3, &mut rng).unwrap();
            let y: Vec<Elem> = c.encode(&m).unwrap().iter().zip(&e).map(|(&a, &b)| a + b).collect();
            match c.decode(&y) {
                Err(Error::DecodingFailure { radius: 2 }) => {}
                Ok(d) => {
                    assert_ne!(d.message, m);
                    assert!(rank_norm(&f, &d.error) <= 2);
                    let cw = c.encode(&d.message).unwrap();
                    assert!(rank_distance(&f, &cw, &y).unwrap() <= 2);
                }
                Err(other) => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_wrong_length_input() {
        let c = code(8, 4, 11);
        assert!(c.decode(&[Elem::ZERO; 7]).is_err());
        assert!(c.syndromes(&[Elem::ZERO; 9]).is_err());
    }
}
