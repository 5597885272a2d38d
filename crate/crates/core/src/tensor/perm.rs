use std::fmt;

use crate::error::{Error, Result};

/// A permutation of the factors `{A, B, C}`: factor `k` of the permuted
/// tensor is factor `self.0[k]` of the original. Written as the string of
/// original factor letters, e.g. `"ACB"` swaps B and C.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub [usize; 3]);

impl Perm {
    pub const ID: Perm = Perm([0, 1, 2]);

    pub fn all() -> [Perm; 6] {
        [
            Perm([0, 1, 2]),
            Perm([0, 2, 1]),
            Perm([1, 0, 2]),
            Perm([1, 2, 0]),
            Perm([2, 0, 1]),
            Perm([2, 1, 0]),
        ]
    }

    pub fn parse(s: &str) -> Result<Perm> {
        let letters: Vec<usize> = s
            .trim()
            .chars()
            .map(|c| match c {
                'A' | 'a' => Ok(0),
                'B' | 'b' => Ok(1),
                'C' | 'c' => Ok(2),
                _ => Err(Error::Parse(format!("bad factor permutation {s:?}"))),
            })
            .collect::<Result<_>>()?;
        if letters.len() != 3 || (0..3).any(|i| !letters.contains(&i)) {
            return Err(Error::Parse(format!("bad factor permutation {s:?}")));
        }
        Ok(Perm([letters[0], letters[1], letters[2]]))
    }

    /// Permuting by `self` and then by `next`.
    pub fn then(self, next: Perm) -> Perm {
        Perm([self.0[next.0[0]], self.0[next.0[1]], self.0[next.0[2]]])
    }

    pub fn inverse(self) -> Perm {
        let mut inv = [0; 3];
        for (k, &i) in self.0.iter().enumerate() {
            inv[i] = k;
        }
        Perm(inv)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &i in &self.0 {
            write!(f, "{}", ['A', 'B', 'C'][i])?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}
