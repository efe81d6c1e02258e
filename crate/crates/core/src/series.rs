//! Truncated power series with nonnegative integer coefficients.
//!
//! Series are plain coefficient arrays up to a fixed truncation bound, never
//! symbolic rational functions. This is the oracle side of every dimension
//! check: a tensor factorization like `P[u8,u12] (x) E[y7]` multiplies out to
//! a coefficient list that per-degree enumeration must reproduce.

use serde::Serialize;

/// Coefficients `c_0..=c_n` of a truncated series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Series {
    coeffs: Vec<u64>,
}

impl Series {
    pub fn zero(n: usize) -> Series {
        Series {
            coeffs: vec![0; n + 1],
        }
    }

    pub fn one(n: usize) -> Series {
        let mut s = Series::zero(n);
        s.coeffs[0] = 1;
        s
    }

    pub fn from_coeffs(coeffs: Vec<u64>) -> Series {
        Series { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> u64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn total(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.bound().min(other.bound());
        let mut out = Series::zero(n);
        for i in 0..=n {
            if self.coeffs[i] == 0 {
                continue;
            }
            for j in 0..=(n - i) {
                out.coeffs[i + j] += self.coeffs[i] * other.coeff(j);
            }
        }
        out
    }

    /// `1 / (1 - t^d)` truncated: a polynomial generator of degree `d`.
    pub fn polynomial_generator(d: u32, n: usize) -> Series {
        let mut s = Series::zero(n);
        let mut k = 0usize;
        while k <= n {
            s.coeffs[k] = 1;
            k += d as usize;
        }
        s
    }

    /// `1 + t^d`: an exterior generator of degree `d`.
    pub fn exterior_generator(d: u32, n: usize) -> Series {
        let mut s = Series::zero(n);
        s.coeffs[0] = 1;
        if (d as usize) <= n {
            s.coeffs[d as usize] = 1;
        }
        s
    }

    /// `1 + t^d + ... + t^{d(h-1)}`: a height-`h` truncated polynomial generator.
    pub fn truncated_generator(d: u32, height: u16, n: usize) -> Series {
        let mut s = Series::zero(n);
        for j in 0..height as usize {
            let k = j * d as usize;
            if k <= n {
                s.coeffs[k] = 1;
            }
        }
        s
    }
}

/// One tensor factor of a graded algebra whose series is a closed product.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TensorFactor {
    /// `P[x]` with `deg x = degree`.
    Polynomial { degree: u32 },
    /// `E[x]` with `deg x = degree`.
    Exterior { degree: u32 },
    /// `P[x]/x^height` with `deg x = degree`.
    Truncated { degree: u32, height: u16 },
}

impl TensorFactor {
    pub fn series(&self, n: usize) -> Series {
        match *self {
            TensorFactor::Polynomial { degree } => Series::polynomial_generator(degree, n),
            TensorFactor::Exterior { degree } => Series::exterior_generator(degree, n),
            TensorFactor::Truncated { degree, height } => {
                Series::truncated_generator(degree, height, n)
            }
        }
    }
}

/// Product series of a list of tensor factors, truncated at `n`.
pub fn factor_series(factors: &[TensorFactor], n: usize) -> Series {
    factors
        .iter()
        .fold(Series::one(n), |acc, f| acc.mul(&f.series(n)))
}
