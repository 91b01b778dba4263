use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// An upper unitriangular matrix over the prime field `F_p`, dense row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UtMatrix {
    dim: usize,
    p: u32,
    entries: Vec<u32>,
}

impl UtMatrix {
    pub fn identity(dim: usize, p: u32) -> UtMatrix {
        let mut entries = vec![0; dim * dim];
        for k in 0..dim {
            entries[k * dim + k] = 1;
        }
        UtMatrix { dim, p, entries }
    }

    /// `I + E_{row,col}` (0-based, `row < col`).
    pub fn elementary(dim: usize, p: u32, row: usize, col: usize) -> Result<UtMatrix> {
        if row >= col || col >= dim {
            return Err(Error::InvalidElement(format!("E_{{{row},{col}}} is not strictly upper triangular")));
        }
        let mut m = UtMatrix::identity(dim, p);
        m.entries[row * dim + col] = 1;
        Ok(m)
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<UtMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::InvalidElement("matrix is not square".into()));
            }
            for (c, &x) in row.iter().enumerate() {
                let x = x % p;
                let expected = match r.cmp(&c) {
                    std::cmp::Ordering::Equal => Some(1),
                    std::cmp::Ordering::Greater => Some(0),
                    std::cmp::Ordering::Less => None,
                };
                if expected.is_some_and(|e| e != x) {
                    return Err(Error::InvalidElement("matrix is not unitriangular".into()));
                }
                entries.push(x);
            }
        }
        Ok(UtMatrix { dim, p, entries })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.dim + col]
    }

    /// The block-diagonal embedding `diag(self, I)` into dimension `dim`; the
    /// image is the stabilizer of the trailing basis vectors.
    pub fn extend(&self, dim: usize) -> UtMatrix {
        let mut out = UtMatrix::identity(dim, self.p);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.entries[r * dim + c] = self.get(r, c);
            }
        }
        out
    }

    /// True when the last standard basis vector is fixed.
    pub fn fixes_last_vector(&self) -> bool {
        let d = self.dim;
        (0..d - 1).all(|r| self.get(r, d - 1) == 0)
    }

    fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }
}

impl GroupElement for UtMatrix {
    fn mul(&self, other: &UtMatrix) -> UtMatrix {
        assert_eq!((self.dim, self.p), (other.dim, other.p), "shape mismatch");
        let d = self.dim;
        let mut entries = vec![0u32; d * d];
        for r in 0..d {
            for k in r..d {
                let a = self.entries[r * d + k];
                if a == 0 {
                    continue;
                }
                for c in k..d {
                    entries[r * d + c] = (entries[r * d + c] + a * other.entries[k * d + c]) % self.p;
                }
            }
        }
        UtMatrix { dim: d, p: self.p, entries }
    }

    /// `(I + N)⁻¹ = I − N + N² − …`, finite because `N` is nilpotent.
    fn inv(&self) -> UtMatrix {
        let d = self.dim;
        let id = UtMatrix::identity(d, self.p);
        let mut neg_n = self.clone();
        for r in 0..d {
            for c in 0..d {
                let x = self.entries[r * d + c];
                let n = if r == c { 0 } else { x };
                neg_n.entries[r * d + c] = (self.p - n) % self.p;
            }
        }
        let mut acc = id.clone();
        let mut power = id;
        for _ in 1..d {
            power = mul_plain(&power, &neg_n);
            for k in 0..d * d {
                acc.entries[k] = (acc.entries[k] + power.entries[k]) % self.p;
            }
        }
        acc
    }

    fn is_identity(&self) -> bool {
        *self == UtMatrix::identity(self.dim, self.p)
    }
}

fn mul_plain(a: &UtMatrix, b: &UtMatrix) -> UtMatrix {
    let d = a.dim;
    let mut entries = vec![0u32; d * d];
    for r in 0..d {
        for k in 0..d {
            let x = a.entries[r * d + k];
            if x == 0 {
                continue;
            }
            for c in 0..d {
                entries[r * d + c] = (entries[r * d + c] + x * b.entries[k * d + c]) % a.p;
            }
        }
    }
    UtMatrix { dim: d, p: a.p, entries }
}

impl fmt::Display for UtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for UtMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for UtMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_product() {
        let a = UtMatrix::elementary(4, 3, 0, 1).unwrap();
        let b = UtMatrix::elementary(4, 3, 1, 3).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.get(0, 3), 1);
        assert!(ab.mul(&ab.inv()).is_identity());
        assert!(ab.inv().mul(&ab).is_identity());
        assert!(!b.fixes_last_vector());
        assert!(a.fixes_last_vector());
    }

    #[test]
    fn extension_is_homomorphic() {
        let a = UtMatrix::elementary(3, 2, 0, 2).unwrap();
        let b = UtMatrix::elementary(3, 2, 0, 1).unwrap();
        assert_eq!(a.mul(&b).extend(4), a.extend(4).mul(&b.extend(4)));
        assert!(a.extend(4).fixes_last_vector());
    }

    #[test]
    fn rejects_lower_entries() {
        assert!(UtMatrix::from_rows(2, &[vec![1, 0], vec![1, 1]]).is_err());
        assert!(UtMatrix::from_rows(2, &[vec![1, 1], vec![0, 1]]).is_ok());
    }
}
