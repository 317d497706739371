//! The two worked distortion examples over GF(2^8), `r(x) = 1 + x^2 + x^3 +
//! x^4 + x^8`, rebuilt from their inputs and compared with frozen values.
//!
//! Frozen integers were produced by an independent table-based GF(2^8)
//! implementation, not by this crate.

use alloc::vec;
use alloc::vec::Vec;

use crate::field::{Elem, Field};
use crate::gpt::{distortion_general, distortion_simple};
use crate::matrix::{column_rank_base, rank_norm, BaseMatrix, ExtMatrix};
use crate::overbeck::{t_map, y_ext};

/// One named comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub example: &'static str,
    pub name: &'static str,
    pub passed: bool,
}

pub const EXAMPLE_ONE_X: [[u64; 4]; 4] = [[8, 32, 64, 4], [65, 117, 205, 16], [204, 181, 142, 28], [143, 106, 71, 77]];
pub const EXAMPLE_ONE_Y: [[u64; 4]; 3] = [[1, 1, 0, 0], [0, 0, 1, 1], [1, 1, 0, 0]];
pub const EXAMPLE_TWO_X: [[u64; 4]; 4] = [[72, 36, 64, 4], [141, 84, 205, 32], [0, 148, 205, 32], [66, 110, 205, 4]];
pub const EXAMPLE_TWO_Y: [[u64; 4]; 3] = [[0, 48, 0, 48], [66, 84, 66, 84], [66, 112, 66, 112]];

fn frozen<const R: usize>(rows: &[[u64; 4]; R]) -> ExtMatrix {
    ExtMatrix::from_fn(R, 4, |r, c| Elem(rows[r][c]))
}

/// `m = (α^3, α^5, α^6, α^2)` and offsets `1100 / 1111 / 0011`.
pub fn example_one_inputs(field: &Field) -> (Vec<Elem>, BaseMatrix) {
    let m = [3, 5, 6, 2].map(|e| field.alpha_pow(e)).to_vec();
    let bits = |s: &str| s.bytes().map(|b| b == b'1').collect::<Vec<bool>>();
    let offsets = BaseMatrix::from_rows(&[bits("1100"), bits("1111"), bits("0011")]).expect("rectangular");
    (m, offsets)
}

/// Frobenius seeds `α^3, α^5`; free columns `(α^6, α^12, α^12, α^12)ᵀ` and
/// `(α^2, α^5, α^5, α^2)ᵀ`; free column `j` is added to Frobenius column `j`.
pub fn example_two_inputs(field: &Field) -> (Vec<Elem>, ExtMatrix, BaseMatrix) {
    let seeds = vec![field.alpha_pow(3), field.alpha_pow(5)];
    let free_exponents = [[6, 2], [12, 5], [12, 5], [12, 2]];
    let free = ExtMatrix::from_fn(4, 2, |r, c| field.alpha_pow(free_exponents[r][c]));
    (seeds, free, BaseMatrix::identity(2))
}

pub fn example_one_checks() -> Vec<Check> {
    let f = Field::gf256();
    let (m, offsets) = example_one_inputs(&f);
    let x = distortion_simple(&f, &m, &offsets).expect("shapes match");
    let y = t_map(&f, &x).expect("k = 4");
    let ext = y_ext(&f, &y, 3).expect("u = 3");

    // entries written as α-powers plus base-field offsets
    let a = |e| f.alpha_pow(e);
    let one = Elem::ONE;
    let symbolic = ExtMatrix::from_rows(&[
        vec![a(3), a(5), a(6), a(2)],
        vec![a(6) + one, a(10) + one, a(12), a(4)],
        vec![a(12) + one, a(20) + one, a(24) + one, a(8) + one],
        vec![a(24), a(40), a(48) + one, a(16) + one],
    ])
    .expect("rectangular");

    let blocks_equal = (0..3).all(|b| ext.row_range(3 * b, 3 * b + 3) == y);
    let name = "example 1";
    vec![
        check(name, "m has full column rank 4", rank_norm(&f, &m) == 4),
        check(name, "offset matrix has GF(2) rank 2", offsets.rank() == 2),
        check(name, "X matches the symbolic entries", x == symbolic),
        check(name, "X matches frozen values", x == frozen(&EXAMPLE_ONE_X)),
        check(name, "X has column rank 4", column_rank_base(&f, &x) == 4),
        check(name, "Y = T(X) is 1100/0011/1100", y == frozen(&EXAMPLE_ONE_Y)),
        check(name, "Y lies over GF(2) and sigma(Y) = Y", y.is_base() && y.frobenius(&f, 1) == y),
        check(name, "rank(Y) = 2", y.rank(&f) == 2),
        check(name, "Y_ext is three copies of Y", blocks_equal),
        check(name, "rank(Y_ext) = t1 - a = 2", ext.rank(&f) == 2),
    ]
}

pub fn example_two_checks() -> Vec<Check> {
    let f = Field::gf256();
    let (seeds, free, mixing) = example_two_inputs(&f);
    let x = distortion_general(&f, &seeds, &free, &mixing).expect("shapes match");
    let y = t_map(&f, &x).expect("k = 4");
    let ext = y_ext(&f, &y, 3).expect("u = 3");

    let a = |e| f.alpha_pow(e);
    let symbolic = ExtMatrix::from_rows(&[
        vec![a(3) + a(6), a(5) + a(2), a(6), a(2)],
        vec![a(6) + a(12), a(10) + a(5), a(12), a(5)],
        vec![a(12) + a(12), a(20) + a(5), a(12), a(5)],
        vec![a(24) + a(12), a(40) + a(2), a(12), a(2)],
    ])
    .expect("rectangular");
    let first_column = vec![Elem::ZERO, a(24) + a(12), a(24) + a(12)];
    let pure = ExtMatrix::from_fn(4, 2, |r, c| f.frobenius(seeds[c], r as i64));

    let name = "example 2";
    vec![
        check(name, "X matches the symbolic entries", x == symbolic),
        check(name, "X matches frozen values", x == frozen(&EXAMPLE_TWO_X)),
        check(name, "X has column rank 4", column_rank_base(&f, &x) == 4),
        check(name, "T kills pure Frobenius columns", t_map(&f, &pure).is_ok_and(|t| t.is_zero())),
        check(name, "Y matches frozen values", y == frozen(&EXAMPLE_TWO_Y)),
        check(name, "column 1 = column 3 = (0, a^24+a^12, a^24+a^12)", y.column(0) == first_column && y.column(2) == first_column),
        check(name, "column 2 = column 4", y.column(1) == y.column(3)),
        check(name, "rank(Y) = 2", y.rank(&f) == 2),
        check(name, "rank(Y_ext) = t1 - a = 2", ext.rank(&f) == 2),
    ]
}

/// Every check of both examples.
pub fn all_checks() -> Vec<Check> {
    let mut checks = example_one_checks();
    checks.extend(example_two_checks());
    checks
}

fn check(example: &'static str, name: &'static str, passed: bool) -> Check {
    Check { example, name, passed }
}
