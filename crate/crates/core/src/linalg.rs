//! Row spaces over GF(p) kept in reduced row echelon form.

/// A subspace of GF(p)^width, stored as its RREF basis. Rows are ordered by
/// pivot column; every pivot entry is 1 and is the only nonzero in its column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSpace {
    p: u8,
    width: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    inverses: Vec<u8>,
}

impl RowSpace {
    pub fn new(p: u32, width: usize) -> Self {
        assert!((2..256).contains(&p), "row spaces support primes below 256");
        let p8 = p as u8;
        let mut inverses = vec![0u8; p as usize];
        for a in 1..p {
            inverses[a as usize] = (1..p).find(|b| a * b % p == 1).unwrap() as u8;
        }
        RowSpace { p: p8, width, rows: Vec::new(), pivots: Vec::new(), inverses }
    }

    /// Span of the given vectors.
    pub fn span<I>(p: u32, width: usize, generators: I) -> Self
    where
        I: IntoIterator<Item = Vec<u8>>,
    {
        let mut space = RowSpace::new(p, width);
        for g in generators {
            space.insert(g);
        }
        space
    }

    pub fn p(&self) -> u32 {
        self.p as u32
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Subtracts multiples of basis rows so that `v` has zeros in every pivot column.
    /// The result is zero iff `v` lies in the space.
    pub fn reduce(&self, v: &mut [u8]) {
        assert_eq!(v.len(), self.width);
        for (row, &piv) in self.rows.iter().zip(&self.pivots) {
            let c = v[piv];
            if c != 0 {
                axpy(v, row, self.p - c, self.p);
            }
        }
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the space; returns whether the rank grew.
    pub fn insert(&mut self, mut v: Vec<u8>) -> bool {
        self.reduce(&mut v);
        let Some(piv) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.inverses[v[piv] as usize];
        scale(&mut v, inv, self.p);
        for row in &mut self.rows {
            let c = row[piv];
            if c != 0 {
                axpy(row, &v, self.p - c, self.p);
            }
        }
        let at = self.pivots.partition_point(|&q| q < piv);
        self.pivots.insert(at, piv);
        self.rows.insert(at, v);
        true
    }

    pub fn is_subspace_of(&self, other: &RowSpace) -> bool {
        self.width == other.width && self.rows.iter().all(|r| other.contains(r))
    }

    pub fn same_space(&self, other: &RowSpace) -> bool {
        self.rank() == other.rank() && self.is_subspace_of(other)
    }

    /// `Σ coeffs[i]·rows[i]`.
    pub fn combine(&self, coeffs: &[u8]) -> Vec<u8> {
        let mut out = vec![0u8; self.width];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c != 0 {
                axpy(&mut out, row, c, self.p);
            }
        }
        out
    }
}

/// `y ← y + c·x (mod p)`.
pub fn axpy(y: &mut [u8], x: &[u8], c: u8, p: u8) {
    let (c, p) = (c as u16, p as u16);
    for (a, &b) in y.iter_mut().zip(x) {
        *a = ((*a as u16 + c * b as u16) % p) as u8;
    }
}

/// `y ← y + x (mod p)`, the hot path of codeword enumeration.
#[inline]
pub fn add_assign(y: &mut [u8], x: &[u8], p: u8) {
    for (a, &b) in y.iter_mut().zip(x) {
        let s = *a as u16 + b as u16;
        *a = if s >= p as u16 { (s - p as u16) as u8 } else { s as u8 };
    }
}

fn scale(v: &mut [u8], c: u8, p: u8) {
    for a in v.iter_mut() {
        *a = ((*a as u16 * c as u16) % p as u16) as u8;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_membership() {
        let gens = vec![vec![1, 2, 0], vec![0, 1, 1], vec![1, 0, 1]];
        let s = RowSpace::span(3, 3, gens);
        // (1,0,1) = (1,2,0) + (0,1,1) over GF(3)
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&[2, 1, 0]));
        assert!(!s.contains(&[0, 0, 1]));
        for (row, &piv) in s.rows().iter().zip(s.pivots()) {
            assert_eq!(row[piv], 1);
        }
    }

    #[test]
    fn rref_pivot_columns_are_clean() {
        let gens = vec![vec![0, 2, 1, 1], vec![1, 1, 0, 2], vec![1, 0, 2, 0], vec![2, 2, 2, 2]];
        let s = RowSpace::span(3, 4, gens.clone());
        for (i, &piv) in s.pivots().iter().enumerate() {
            for (j, row) in s.rows().iter().enumerate() {
                assert_eq!(row[piv], u8::from(i == j));
            }
        }
        for g in &gens {
            assert!(s.contains(g));
        }
    }

    #[test]
    fn subspace_relations() {
        let big = RowSpace::span(2, 3, vec![vec![1, 0, 0], vec![0, 1, 0]]);
        let small = RowSpace::span(2, 3, vec![vec![1, 1, 0]]);
        assert!(small.is_subspace_of(&big));
        assert!(!big.is_subspace_of(&small));
        let again = RowSpace::span(2, 3, vec![vec![1, 1, 0], vec![0, 1, 0]]);
        assert!(again.same_space(&big));
    }
}
