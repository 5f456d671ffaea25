//! Matrices of polynomials and exact determinants.

use super::{Polynomial, VarSpace};

/// Row-major matrix of polynomials sharing one variable space.
#[derive(Debug, Clone)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    space: VarSpace,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Polynomial>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let space = entries[0].space();
        assert!(
            entries.iter().all(|p| p.space() == space),
            "matrix entries mix variable spaces"
        );
        PolyMatrix {
            rows,
            cols,
            space,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    /// Exact determinant: direct expansion for n <= 2, fraction-free Bareiss
    /// elimination for n >= 3 (each division is exact over the polynomial
    /// ring, which keeps intermediate entries from blowing up).
    ///
    /// Panics when the matrix is not square.
    pub fn determinant(&self) -> Polynomial {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        match n {
            1 => self.at(0, 0).clone(),
            2 => {
                &(self.at(0, 0) * self.at(1, 1)) - &(self.at(0, 1) * self.at(1, 0))
            }
            _ => self.bareiss(),
        }
    }

    fn bareiss(&self) -> Polynomial {
        let n = self.rows;
        let mut m: Vec<Vec<Polynomial>> = (0..n)
            .map(|r| (0..n).map(|c| self.at(r, c).clone()).collect())
            .collect();
        let mut sign_flip = false;
        let mut prev_pivot = Polynomial::one(self.space);
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                // Pivot by swapping in a row with a nonzero entry; none means
                // the determinant is zero.
                match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        sign_flip = !sign_flip;
                    }
                    None => return Polynomial::zero(self.space),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .exact_divide(&prev_pivot)
                        .expect("Bareiss division is exact by construction");
                }
                m[i][k] = Polynomial::zero(self.space);
            }
            prev_pivot = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if sign_flip {
            -&det
        } else {
            det
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use proptest::prelude::*;

    fn p(src: &str) -> Polynomial {
        Polynomial::parse(src, VarSpace::Sphere).unwrap()
    }

    #[test]
    fn small_determinants() {
        let m1 = PolyMatrix::new(1, 1, vec![p("x*y - 1")]);
        assert_eq!(m1.determinant(), p("x*y - 1"));
        let m2 = PolyMatrix::new(2, 2, vec![p("x"), p("y"), p("y"), p("x")]);
        assert_eq!(m2.determinant(), p("x^2 - y^2"));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        // 3x3 with polynomial entries; compare against the explicit rule of
        // Sarrus computed by hand on the same entries.
        let e = [
            p("x"), p("y"), p("1"),
            p("z"), p("x"), p("y"),
            p("1"), p("z"), p("x"),
        ];
        let m = PolyMatrix::new(3, 3, e.to_vec());
        let sarrus = &(&(&(&(&(&e[0] * &e[4]) * &e[8]) + &(&(&e[1] * &e[5]) * &e[6]))
            + &(&(&e[2] * &e[3]) * &e[7]))
            - &(&(&e[2] * &e[4]) * &e[6]))
            - &(&(&(&e[0] * &e[5]) * &e[7]) + &(&(&e[1] * &e[3]) * &e[8]));
        assert_eq!(m.determinant(), sarrus);
    }

    #[test]
    fn zero_pivot_column_gives_zero() {
        let z = Polynomial::zero(VarSpace::Sphere);
        let m = PolyMatrix::new(
            3,
            3,
            vec![z.clone(), p("y"), p("1"), z.clone(), p("x"), p("y"), z, p("z"), p("x")],
        );
        assert_eq!(m.determinant(), Polynomial::zero(VarSpace::Sphere));
    }

    #[test]
    fn zero_leading_pivot_swaps_rows() {
        let z = Polynomial::zero(VarSpace::Sphere);
        let m = PolyMatrix::new(2, 2, vec![z, p("y"), p("x"), p("z")]);
        assert_eq!(m.determinant(), p("-x*y"));
    }

    fn arb_small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec(((0u32..=1, 0u32..=1, 0u32..=1), -4i64..=4), 0..3).prop_map(
            |terms| {
                let mut acc = Polynomial::zero(VarSpace::Sphere);
                for ((ex, ey, ez), n) in terms {
                    acc = &acc + &Polynomial::monomial(VarSpace::Sphere, [ex, ey, ez], int(n));
                }
                acc
            },
        )
    }

    proptest! {
        #[test]
        fn swapping_rows_negates(entries in prop::collection::vec(arb_small_poly(), 9)) {
            let m = PolyMatrix::new(3, 3, entries.clone());
            let mut swapped = entries;
            swapped.swap(0, 6);
            swapped.swap(1, 7);
            swapped.swap(2, 8);
            let ms = PolyMatrix::new(3, 3, swapped);
            prop_assert_eq!(ms.determinant(), -&m.determinant());
        }
    }

    #[test]
    fn rational_entries_work() {
        let m = PolyMatrix::new(
            2,
            2,
            vec![
                Polynomial::constant(VarSpace::Sphere, rat(1, 2)),
                p("x"),
                p("y"),
                Polynomial::constant(VarSpace::Sphere, rat(2, 3)),
            ],
        );
        assert_eq!(m.determinant(), p("1/3 - x*y"));
    }
}
