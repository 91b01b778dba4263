use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::GroupElement;

/// A permutation of `{1..degree}`, stored 0-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree as u8).collect() }
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidElement(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
        }
        Ok(Perm { images: images.iter().map(|&x| (x - 1) as u8).collect() })
    }

    /// From disjoint or overlapping 1-based cycles, applied right to left.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Perm> {
        let mut out = Perm::identity(degree);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (1..=degree).collect();
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x == 0 || x > degree || y == 0 || y > degree {
                    return Err(Error::InvalidElement(format!("point out of range in cycle {cycle:?}")));
                }
                images[x - 1] = y;
            }
            out = Perm::from_images(&images)?.mul(&out);
        }
        Ok(out)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize + 1).collect()
    }

    /// The same permutation on `degree` points, fixing the new ones.
    pub fn extend(&self, degree: usize) -> Perm {
        let mut images = self.images.clone();
        images.extend(self.images.len() as u8..degree as u8);
        Perm { images }
    }

    pub fn fixes(&self, x: usize) -> bool {
        self.apply(x) == x
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        let mut transpositions = 0;
        for start in 0..self.degree() {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 0
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl GroupElement for Perm {
    /// `(self · other)(x) = self(other(x))`; degrees must agree.
    fn mul(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { images: other.images.iter().map(|&x| self.images[x as usize]).collect() }
    }

    fn inv(&self) -> Perm {
        let mut images = vec![0u8; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u8;
        }
        Perm { images }
    }

    fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y as usize)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses `degree:cycles`, e.g. `6:(1 2)(5 6)`, or bare cycles with the
/// degree taken from the largest point.
impl FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Perm> {
        let (degree, body) = match s.split_once(':') {
            Some((d, b)) => (
                Some(d.trim().parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?),
                b,
            ),
            None => (None, s),
        };
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        for chunk in body.split('(').skip(1) {
            let inner = chunk
                .split_once(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced cycle in `{s}`")))?
                .0;
            let pts = inner
                .split(|c: char| c == ' ' || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
                .collect::<Result<Vec<_>>>()?;
            if !pts.is_empty() {
                cycles.push(pts);
            }
        }
        let max = cycles.iter().flatten().copied().max().unwrap_or(1);
        let degree = degree.unwrap_or(max);
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(degree, &refs)
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Perm, D::Error> {
        let images = Vec::<usize>::deserialize(d)?;
        Perm::from_images(&images).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_is_right_to_left() {
        let a: Perm = "3:(1 2)".parse().unwrap();
        let b: Perm = "3:(2 3)".parse().unwrap();
        // a(b(1)) = 1, a(b(2)) = a(3) = 3, a(b(3)) = a(2) = 1
        assert_eq!(a.mul(&b).images(), vec![2, 3, 1]);
        assert_eq!(a.mul(&b).to_string(), "(1 2 3)");
    }

    #[test]
    fn parse_display_round_trip() {
        let p: Perm = "6:(1 3 5)(2 4)".parse().unwrap();
        assert_eq!(p.to_string(), "(1 3 5)(2 4)");
        assert_eq!(p.degree(), 6);
        assert_eq!(p.to_string().parse::<Perm>().unwrap().extend(6), p);
        assert!(!p.is_even());
        assert!(p.mul(&p.inv()).is_identity());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[3,4,5,2,1,6]");
        assert_eq!(serde_json::from_str::<Perm>(&json).unwrap(), p);
        assert!(serde_json::from_str::<Perm>("[1,1]").is_err());
    }

    #[test]
    fn extension_fixes_new_points() {
        let p: Perm = "(1 2)".parse().unwrap();
        let q = p.extend(4);
        assert!(q.fixes(3) && q.fixes(4));
        assert_eq!(q.apply(1), 2);
    }
}
