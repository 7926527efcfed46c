//! Small fixed-size complex linear algebra used by the polarization and
//! correlator modules. Nothing here is momentum-aware; these are plain
//! value types over `Complex64`.

use num_complex::Complex64;

/// Complex three-vector in the fixed lab Cartesian basis (or, for
/// coefficient vectors, in the helicity basis `(ε⁺, ε⁻, ε^l)`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexTriple(pub [Complex64; 3]);

impl ComplexTriple {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Self {
        Self([a, b, c])
    }

    pub fn from_real(v: [f64; 3]) -> Self {
        Self([v[0].into(), v[1].into(), v[2].into()])
    }

    /// Hermitian inner product, antilinear in `self`: `Σᵢ conj(selfᵢ)·rhsᵢ`.
    pub fn hermitian_dot(&self, rhs: &Self) -> Complex64 {
        self.0
            .iter()
            .zip(rhs.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        Self([self.0[0] * s, self.0[1] * s, self.0[2] * s])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self([
            self.0[0] + rhs.0[0],
            self.0[1] + rhs.0[1],
            self.0[2] + rhs.0[2],
        ])
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        self.0
            .iter()
            .zip(rhs.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Real 3×3 matrix (row-major); used for spatial rotations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealMat3(pub [[f64; 3]; 3]);

impl RealMat3 {
    pub fn identity() -> Self {
        Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn apply(&self, v: [f64; 3]) -> [f64; 3] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1] + m[0][2] * v[2],
            m[1][0] * v[0] + m[1][1] * v[1] + m[1][2] * v[2],
            m[2][0] * v[0] + m[2][1] * v[1] + m[2][2] * v[2],
        ]
    }

    pub fn apply_complex(&self, v: &ComplexTriple) -> ComplexTriple {
        let m = &self.0;
        let w = &v.0;
        ComplexTriple([
            m[0][0] * w[0] + m[0][1] * w[1] + m[0][2] * w[2],
            m[1][0] * w[0] + m[1][1] * w[1] + m[1][2] * w[2],
            m[2][0] * w[0] + m[2][1] * w[1] + m[2][2] * w[2],
        ])
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = [[0.0; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Self(out)
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// Complex 3×3 matrix (row-major); holds measurement projectors in the
/// helicity basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[Complex64; 3]; 3]);

impl Mat3 {
    pub fn zero() -> Self {
        Self([[Complex64::ZERO; 3]; 3])
    }

    /// Outer product `a · b†`, i.e. `(i, j) ↦ aᵢ·conj(bⱼ)`.
    pub fn outer(a: &ComplexTriple, b: &ComplexTriple) -> Self {
        let mut out = [[Complex64::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a.0[i] * b.0[j].conj();
            }
        }
        Self(out)
    }

    /// Quadratic form `u† · M · v`, antilinear in `u`.
    pub fn quadratic_form(&self, u: &ComplexTriple, v: &ComplexTriple) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for i in 0..3 {
            let mut row = Complex64::ZERO;
            for j in 0..3 {
                row += self.0[i][j] * v.0[j];
            }
            acc += u.0[i].conj() * row;
        }
        acc
    }

    pub fn apply(&self, v: &ComplexTriple) -> ComplexTriple {
        let mut out = [Complex64::ZERO; 3];
        for (i, cell) in out.iter_mut().enumerate() {
            *cell = (0..3).map(|j| self.0[i][j] * v.0[j]).sum();
        }
        ComplexTriple(out)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = [[Complex64::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[j][i].conj();
            }
        }
        Self(out)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = [[Complex64::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        Self(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += rhs.0[i][j];
            }
        }
        Self(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell -= rhs.0[i][j];
            }
        }
        Self(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.0;
        for row in out.iter_mut() {
            for cell in row.iter_mut() {
                *cell *= s;
            }
        }
        Self(out)
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }
}

/// Complex 2×2 matrix over the `(H, V)` polarization labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Self([[Complex64::ZERO; 2]; 2])
    }

    pub fn adjoint(&self) -> Self {
        Self([
            [self.0[0][0].conj(), self.0[1][0].conj()],
            [self.0[0][1].conj(), self.0[1][1].conj()],
        ])
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell += rhs.0[i][j];
            }
        }
        Self(out)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.0;
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell -= rhs.0[i][j];
            }
        }
        Self(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = self.0;
        for row in out.iter_mut() {
            for cell in row.iter_mut() {
                *cell *= s;
            }
        }
        Self(out)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn max_abs_diff(&self, rhs: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        worst
    }

    /// Eigenvalues of a Hermitian 2×2 matrix, ascending. The imaginary parts
    /// of the diagonal are ignored; callers check Hermiticity separately.
    pub fn hermitian_eigenvalues(&self) -> [f64; 2] {
        let a = self.0[0][0].re;
        let d = self.0[1][1].re;
        let b = self.0[0][1];
        let mean = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        [mean - disc, mean + disc]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64 as C;

    #[test]
    fn outer_product_and_quadratic_form_agree() {
        let a = ComplexTriple::new(C::new(0.3, 0.4), C::new(-0.1, 0.9), C::new(0.2, 0.0));
        let b = ComplexTriple::new(C::new(1.0, -0.5), C::new(0.0, 0.7), C::new(-0.3, 0.1));
        let m = Mat3::outer(&a, &b);
        let u = ComplexTriple::new(C::new(0.5, 0.2), C::new(0.1, -0.4), C::new(0.9, 0.3));
        let v = ComplexTriple::new(C::new(-0.2, 0.6), C::new(0.8, 0.0), C::new(0.4, -0.5));
        // u† (a b†) v  ==  (u† a)(b† v)
        let direct = m.quadratic_form(&u, &v);
        let factored = u.hermitian_dot(&a) * b.hermitian_dot(&v);
        assert_abs_diff_eq!(direct.re, factored.re, epsilon = 1e-15);
        assert_abs_diff_eq!(direct.im, factored.im, epsilon = 1e-15);
    }

    #[test]
    fn mat2_hermitian_eigenvalues() {
        let m = Mat2([
            [C::new(2.0, 0.0), C::new(0.0, -1.0)],
            [C::new(0.0, 1.0), C::new(2.0, 0.0)],
        ]);
        let [lo, hi] = m.hermitian_eigenvalues();
        assert_abs_diff_eq!(lo, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(hi, 3.0, epsilon = 1e-14);
    }

    #[test]
    fn real_mat3_det_and_transpose() {
        let r = RealMat3([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
        assert_abs_diff_eq!(r.det(), 1.0, epsilon = 1e-15);
        let rtr = r.transpose().mul(&r);
        assert!(rtr.0[0][0] == 1.0 && rtr.0[1][1] == 1.0 && rtr.0[2][2] == 1.0);
    }
}
