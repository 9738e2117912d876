//! Character values as elements of Z[x]/(x^n − 1), for fast exact identity checks.

use num_traits::ToPrimitive;

use super::character::CharacterTable;
use crate::exact_algebra::{lcm, CyclotomicNumber, IntPolynomial};

/// Sparse Σ c_j ζ_n^j.
pub(crate) type Sparse = Vec<(usize, i64)>;

pub(crate) struct CyclicTable {
    n: usize,
    cyc: Vec<i128>,
    /// values[i][c] = χ_i(C_c)
    pub values: Vec<Vec<Sparse>>,
}

impl CyclicTable {
    /// None when some value has non-integral power-basis coordinates.
    pub fn new(t: &CharacterTable) -> Option<Self> {
        let n = t.chars.iter().flatten().fold(1u64, |acc, x| lcm(acc, x.conductor()));
        let values = t
            .chars
            .iter()
            .map(|row| row.iter().map(|x| to_sparse(x, n)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        let cyc = IntPolynomial::cyclotomic(n).coeffs().iter().map(|c| c.to_i128()).collect::<Option<Vec<_>>>()?;
        Some(CyclicTable { n: n as usize, cyc, values })
    }

    pub fn conj(&self, a: &Sparse) -> Sparse {
        a.iter().map(|&(j, c)| ((self.n - j) % self.n, c)).collect()
    }

    /// acc += m · a · b
    pub fn add_product(&self, acc: &mut [i128], a: &Sparse, b: &Sparse, m: i64) {
        for &(i, x) in a {
            for &(j, y) in b {
                acc[(i + j) % self.n] += (x * y * m) as i128;
            }
        }
    }

    pub fn add_scaled(&self, acc: &mut [i128], a: &Sparse, m: i64) {
        for &(i, x) in a {
            acc[i] += (x * m) as i128;
        }
    }

    pub fn zero(&self) -> Vec<i128> {
        vec![0; self.n]
    }

    /// Whether acc vanishes in Q(ζ_n), i.e. Φ_n divides it.
    pub fn is_zero(&self, acc: &[i128]) -> bool {
        let mut v = acc.to_vec();
        let phi = self.cyc.len() - 1;
        for i in (phi..v.len()).rev() {
            let c = v[i];
            if c != 0 {
                for (j, &p) in self.cyc.iter().enumerate() {
                    v[i - phi + j] -= c * p;
                }
            }
        }
        v[..phi].iter().all(|&x| x == 0)
    }
}

fn to_sparse(x: &CyclotomicNumber, n: u64) -> Option<Sparse> {
    x.lift(n)
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(j, c)| if c.is_integer() { c.to_integer().to_i64().map(|v| (j, v)) } else { None })
        .collect()
}
