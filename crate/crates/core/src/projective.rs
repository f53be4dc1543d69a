//! Points and lines of PG(n-1, q), enumerated in canonical form.

use crate::field::{Felt, Field};
use crate::linalg::{normalize, Mat};

/// Number of `k`-dimensional subspaces of an `n`-dimensional space over GF(q).
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= (q as u128).pow(n - i) - 1;
        den *= (q as u128).pow(i + 1) - 1;
    }
    (num / den) as u64
}

/// Every vector of `F^n` in lexicographic order of packed values.
pub fn all_vectors(field: &Field, n: usize) -> impl Iterator<Item = Vec<Felt>> + '_ {
    let q = field.q() as u64;
    let total = q.pow(n as u32);
    (0..total).map(move |mut code| {
        let mut v = vec![Felt::ZERO; n];
        for slot in v.iter_mut().rev() {
            *slot = Felt((code % q) as u16);
            code /= q;
        }
        v
    })
}

/// Points of PG(n-1, q) as vectors whose first nonzero entry is one.
pub fn points(field: &Field, n: usize) -> Vec<Vec<Felt>> {
    let q = field.q() as u64;
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        for mut code in 0..q.pow(free as u32) {
            let mut v = vec![Felt::ZERO; n];
            v[lead] = Felt::ONE;
            for slot in v[lead + 1..].iter_mut().rev() {
                *slot = Felt((code % q) as u16);
                code /= q;
            }
            out.push(v);
        }
    }
    out
}

/// A line of PG(n-1, q): the row space of a 2×n matrix in reduced row
/// echelon form, which makes equality of lines equality of values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProjLine {
    rows: [Vec<Felt>; 2],
}

impl ProjLine {
    /// The line through `x` and `y`; `None` if they are dependent.
    pub fn through(field: &Field, x: &[Felt], y: &[Felt]) -> Option<ProjLine> {
        let m = Mat::from_rows(field, x.len(), &[x.to_vec(), y.to_vec()]).ok()?;
        let rr = m.rref();
        if rr.rank < 2 {
            return None;
        }
        Some(ProjLine { rows: [rr.mat.row(0).to_vec(), rr.mat.row(1).to_vec()] })
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    /// The two canonical spanning vectors.
    pub fn basis(&self) -> (&[Felt], &[Felt]) {
        (&self.rows[0], &self.rows[1])
    }

    pub fn to_mat(&self, field: &Field) -> Mat {
        Mat::from_rows(field, self.n(), &self.rows).expect("line rows")
    }

    /// The q+1 points of the line, normalized.
    pub fn points(&self, field: &Field) -> Vec<Vec<Felt>> {
        let (a, b) = self.basis();
        let mut out = vec![b.to_vec()];
        for t in field.elements() {
            let v: Vec<Felt> = a.iter().zip(b).map(|(&x, &y)| field.add(x, field.mul(t, y))).collect();
            out.push(normalize(field, &v).expect("a and b independent"));
        }
        out
    }

    pub fn contains(&self, field: &Field, v: &[Felt]) -> bool {
        let m = Mat::from_rows(field, self.n(), &[self.rows[0].clone(), self.rows[1].clone(), v.to_vec()])
            .expect("vector length");
        m.rank() == 2
    }
}

/// All lines of PG(n-1, q), enumerated by pivot pattern and then by free
/// entries; every line appears exactly once.
pub fn lines(field: &Field, n: usize) -> Vec<ProjLine> {
    let q = field.q() as u64;
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            // row a: pivot i, free entries at positions > i except j
            // row b: pivot j, free entries at positions > j
            let a_free: Vec<usize> = (i + 1..n).filter(|&c| c != j).collect();
            let b_free: Vec<usize> = (j + 1..n).collect();
            let total = q.pow((a_free.len() + b_free.len()) as u32);
            for mut code in 0..total {
                let mut a = vec![Felt::ZERO; n];
                let mut b = vec![Felt::ZERO; n];
                a[i] = Felt::ONE;
                b[j] = Felt::ONE;
                for &c in b_free.iter().rev() {
                    b[c] = Felt((code % q) as u16);
                    code /= q;
                }
                for &c in a_free.iter().rev() {
                    a[c] = Felt((code % q) as u16);
                    code /= q;
                }
                out.push(ProjLine { rows: [a, b] });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn gaussian_counts() {
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(5, 2, 2), 155);
        assert_eq!(gaussian_binomial(4, 1, 3), 40);
        assert_eq!(gaussian_binomial(3, 4, 3), 0);
    }

    #[test]
    fn enumeration_sizes_and_uniqueness() {
        for (q, n) in [(2u32, 3usize), (2, 4), (3, 4), (4, 3), (2, 5)] {
            let f = Field::gf(q).unwrap();
            let pts = points(&f, n);
            assert_eq!(pts.len() as u64, gaussian_binomial(n as u32, 1, q as u64));
            let ls = lines(&f, n);
            assert_eq!(ls.len() as u64, gaussian_binomial(n as u32, 2, q as u64));
            let set: BTreeSet<_> = ls.iter().cloned().collect();
            assert_eq!(set.len(), ls.len());
            for l in &ls {
                let (a, b) = l.basis();
                assert_eq!(ProjLine::through(&f, a, b).as_ref(), Some(l));
                assert_eq!(l.points(&f).len(), q as usize + 1);
            }
        }
    }
}
