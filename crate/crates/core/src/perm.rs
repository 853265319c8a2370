//! Permutations of {0, .., n-1} stored as image tables.
//!
//! Composition is right to left throughout: `a.compose(&b)` is the
//! permutation applying `b` first and then `a`.

use std::fmt;

/// A permutation of {0, .., n-1}.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { map: (0..n).collect() }
    }

    /// Builds a permutation from its image table; `images[x]` is the image of `x`.
    pub fn from_images(images: Vec<usize>) -> Perm {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            assert!(y < n && !seen[y], "image table is not a bijection");
            seen[y] = true;
        }
        Perm { map: images }
    }

    /// Builds a permutation on `n` points from disjoint cycles; omitted points stay fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Perm {
        let mut map: Vec<usize> = (0..n).collect();
        let mut used = vec![false; n];
        for cycle in cycles {
            for (w, &x) in cycle.iter().enumerate() {
                assert!(x < n && !used[x], "cycles are not disjoint or out of range");
                used[x] = true;
                map[x] = cycle[(w + 1) % cycle.len()];
            }
        }
        Perm { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// Image table as a slice; entry `x` is the image of `x`.
    pub fn images(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Perm { map: inv }
    }

    /// Right-to-left composition: `(a.compose(b))(x) = a(b(x))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.map.len(), other.map.len());
        Perm { map: other.map.iter().map(|&x| self.map[x]).collect() }
    }

    /// `g self g^{-1}`: the same permutation acting on points relabeled by `g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Disjoint cycles including fixed points; each cycle starts at its
    /// minimum, cycles sorted by their minima.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.map.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.map[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.map[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_involution(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| self.map[y] == x)
    }

    pub fn is_fixed_point_free_involution(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x != y && self.map[y] == x)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id[{}]", self.map.len());
        }
        for cycle in self.cycles() {
            if cycle.len() == 1 {
                continue;
            }
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_is_right_to_left() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]);
        let b = Perm::from_cycles(3, &[vec![1, 2]]);
        // (a.compose(b))(1) = a(b(1)) = a(2) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
        // (b.compose(a))(1) = b(a(1)) = b(0) = 0
        assert_eq!(b.compose(&a).apply(1), 0);
    }

    #[test]
    fn cycles_are_sorted_and_min_first() {
        let p = Perm::from_images(vec![2, 0, 1, 3, 5, 4]);
        assert_eq!(p.cycles(), vec![vec![0, 2, 1], vec![3], vec![4, 5]]);
    }

    #[test]
    fn inverse_round_trip() {
        let p = Perm::from_cycles(6, &[vec![0, 3, 1], vec![2, 5]]);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn involution_checks() {
        let s1 = Perm::from_cycles(6, &[vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert!(s1.is_fixed_point_free_involution());
        let fixes = Perm::from_cycles(6, &[vec![0, 3]]);
        assert!(fixes.is_involution());
        assert!(!fixes.is_fixed_point_free_involution());
    }

    #[test]
    fn conjugation_relabels_cycles() {
        let p = Perm::from_cycles(4, &[vec![0, 1, 2]]);
        let g = Perm::from_cycles(4, &[vec![0, 3]]);
        let q = p.conjugate_by(&g);
        assert_eq!(q.cycles(), vec![vec![0], vec![1, 2, 3]]);
    }
}
