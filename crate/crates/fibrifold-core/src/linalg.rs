//! Small exact matrices and affine maps `w -> A w + v`.

use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub type Mat<const N: usize> = [[i64; N]; N];

pub fn identity<const N: usize>() -> Mat<N> {
    let mut m = [[0; N]; N];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    m
}

pub fn mat_mul<const N: usize>(a: &Mat<N>, b: &Mat<N>) -> Mat<N> {
    let mut m = [[0; N]; N];
    for i in 0..N {
        for j in 0..N {
            m[i][j] = (0..N).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn mat_vec<const N: usize>(a: &Mat<N>, v: &[Q; N]) -> [Q; N] {
    let mut r = [Q::zero(); N];
    for (i, ri) in r.iter_mut().enumerate() {
        for (k, vk) in v.iter().enumerate() {
            if a[i][k] != 0 {
                *ri += *vk * a[i][k];
            }
        }
    }
    r
}

pub fn trace<const N: usize>(a: &Mat<N>) -> i64 {
    (0..N).map(|i| a[i][i]).sum()
}

pub fn det<const N: usize>(a: &Mat<N>) -> i64 {
    let r: Vec<Vec<Q>> = a.iter().map(|row| row.iter().map(|&x| q(x)).collect()).collect();
    let d = rdet(r);
    assert!(d.is_integer());
    d.to_integer()
}

fn rdet(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut d = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c];
        for r in c + 1..n {
            let f = m[r][c] / m[c][c];
            if !f.is_zero() {
                for k in c..n {
                    let t = m[c][k];
                    m[r][k] -= f * t;
                }
            }
        }
    }
    d
}

/// Inverse of a rational matrix, `None` when singular.
pub fn rinv<const N: usize>(a: &[[Q; N]; N]) -> Option<[[Q; N]; N]> {
    let mut m = *a;
    let mut inv = [[Q::zero(); N]; N];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    for c in 0..N {
        let p = (c..N).find(|&r| !m[r][c].is_zero())?;
        m.swap(p, c);
        inv.swap(p, c);
        let piv = m[c][c];
        for k in 0..N {
            m[c][k] /= piv;
            inv[c][k] /= piv;
        }
        for r in 0..N {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c];
                for k in 0..N {
                    let (a1, b1) = (m[c][k], inv[c][k]);
                    m[r][k] -= f * a1;
                    inv[r][k] -= f * b1;
                }
            }
        }
    }
    Some(inv)
}

pub fn to_rational<const N: usize>(a: &Mat<N>) -> [[Q; N]; N] {
    let mut r = [[Q::zero(); N]; N];
    for i in 0..N {
        for j in 0..N {
            r[i][j] = q(a[i][j]);
        }
    }
    r
}

pub fn rmul<const N: usize>(a: &[[Q; N]; N], b: &[[Q; N]; N]) -> [[Q; N]; N] {
    let mut m = [[Q::zero(); N]; N];
    for i in 0..N {
        for j in 0..N {
            let mut s = Q::zero();
            for k in 0..N {
                s += a[i][k] * b[k][j];
            }
            m[i][j] = s;
        }
    }
    m
}

pub fn rmat_vec<const N: usize>(a: &[[Q; N]; N], v: &[Q; N]) -> [Q; N] {
    let mut r = [Q::zero(); N];
    for i in 0..N {
        for k in 0..N {
            r[i] += a[i][k] * v[k];
        }
    }
    r
}

/// Integer matrix from a rational one, if every entry is integral.
pub fn to_integer<const N: usize>(a: &[[Q; N]; N]) -> Option<Mat<N>> {
    let mut m = [[0; N]; N];
    for i in 0..N {
        for j in 0..N {
            if !a[i][j].is_integer() {
                return None;
            }
            m[i][j] = a[i][j].to_integer();
        }
    }
    Some(m)
}

/// Inverse of a unimodular integer matrix.
pub fn int_inv<const N: usize>(a: &Mat<N>) -> Option<Mat<N>> {
    to_integer(&rinv(&to_rational(a))?)
}

/// The affine map `w -> m w + v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Affine<const N: usize> {
    pub m: Mat<N>,
    pub v: [Q; N],
}

pub type Affine2 = Affine<2>;
pub type Affine3 = Affine<3>;

impl<const N: usize> Affine<N> {
    pub fn identity() -> Self {
        Affine { m: identity(), v: [Q::zero(); N] }
    }

    pub fn new(m: Mat<N>, v: [Q; N]) -> Self {
        Affine { m, v }
    }

    pub fn translation(v: [Q; N]) -> Self {
        Affine { m: identity(), v }
    }

    /// `self * o`, i.e. apply `o` first: (A,v)(B,w) = (AB, Aw+v).
    pub fn mul(&self, o: &Self) -> Self {
        let mut v = mat_vec(&self.m, &o.v);
        for (a, b) in v.iter_mut().zip(self.v.iter()) {
            *a += *b;
        }
        Affine { m: mat_mul(&self.m, &o.m), v }
    }

    pub fn inverse(&self) -> Self {
        let mi = int_inv(&self.m).expect("linear part is not unimodular");
        let w = mat_vec(&mi, &self.v);
        Affine { m: mi, v: w.map(|x| -x) }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut r = Self::identity();
        for _ in 0..n.unsigned_abs() {
            r = r.mul(&base);
        }
        r
    }

    pub fn apply(&self, p: &[Q; N]) -> [Q; N] {
        let mut r = mat_vec(&self.m, p);
        for (a, b) in r.iter_mut().zip(self.v.iter()) {
            *a += *b;
        }
        r
    }

    pub fn is_identity(&self) -> bool {
        self.m == identity() && self.v.iter().all(|x| x.is_zero())
    }

    pub fn is_translation(&self) -> bool {
        self.m == identity()
    }

    /// Same map with translation reduced into [0,1).
    pub fn mod1(&self) -> Self {
        Affine { m: self.m, v: self.v.map(|x| x - x.floor()) }
    }

    /// Least common denominator of the translation part.
    pub fn denominator(&self) -> i64 {
        self.v.iter().fold(1, |d, x| d.lcm(x.denom()))
    }
}

impl<const N: usize> fmt::Debug for Affine<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, [", self.m)?;
        for (i, x) in self.v.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "])")
    }
}

/// Hermite normal form basis (rows) of the lattice spanned by integer vectors.
pub fn hnf_rows<const N: usize>(vectors: &[[i64; N]]) -> Vec<[i64; N]> {
    let mut rows: Vec<[i64; N]> = vectors.iter().copied().filter(|v| v.iter().any(|&x| x != 0)).collect();
    let mut basis = Vec::new();
    for c in 0..N {
        // gcd-combine all rows with a nonzero entry in column c
        loop {
            let nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][c] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            let p = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            let pr = rows[p];
            for &i in &nz {
                if i != p {
                    let f = Integer::div_floor(&rows[i][c], &pr[c]);
                    for k in 0..N {
                        rows[i][k] -= f * pr[k];
                    }
                }
            }
            rows.retain(|v| v.iter().any(|&x| x != 0));
        }
        if let Some(i) = (0..rows.len()).find(|&i| rows[i][c] != 0) {
            let mut r = rows.remove(i);
            if r[c] < 0 {
                r = r.map(|x| -x);
            }
            basis.push(r);
        }
    }
    // reduce above-diagonal entries
    for i in 0..basis.len() {
        let c = (0..N).find(|&k| basis[i][k] != 0).unwrap();
        for j in 0..i {
            let f = Integer::div_floor(&basis[j][c], &basis[i][c]);
            if f != 0 {
                let bi = basis[i];
                for k in 0..N {
                    basis[j][k] -= f * bi[k];
                }
            }
        }
    }
    basis
}

/// Lattice basis (rows) of the group generated by rational vectors.
pub fn lattice_basis<const N: usize>(vectors: &[[Q; N]]) -> Vec<[Q; N]> {
    let d = vectors.iter().flatten().fold(1i64, |d, x| d.lcm(x.denom()));
    let ints: Vec<[i64; N]> = vectors.iter().map(|v| v.map(|x| (x * d).to_integer())).collect();
    hnf_rows(&ints).into_iter().map(|r| r.map(|x| Q::new(x, d))).collect()
}

pub fn gcd_all(xs: &[i64]) -> i64 {
    xs.iter().fold(0i64, |g, x| g.gcd(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn affine_product_rule() {
        let a = Affine::new([[0, -1], [1, 0]], [q(1), Q::new(1, 2)]);
        let b = Affine::new([[1, 0], [0, -1]], [Q::new(1, 3), q(0)]);
        let p = [Q::new(1, 5), Q::new(2, 7)];
        assert_eq!(a.mul(&b).apply(&p), a.apply(&b.apply(&p)));
        assert!(a.mul(&a.inverse()).is_identity());
        assert!(a.pow(4).is_translation());
    }

    #[test]
    fn determinants() {
        assert_eq!(det(&[[0, 1, 0], [0, 0, 1], [1, 0, 0]]), 1);
        assert_eq!(det(&[[1, 0], [0, -1]]), -1);
        assert_eq!(det(&[[2, 1], [4, 2]]), 0);
    }

    #[test]
    fn hnf_of_fcc() {
        let v = [[1, 1, 0], [0, 1, 1], [1, 0, 1], [2, 0, 0], [0, 2, 2]];
        let b = hnf_rows(&v);
        assert_eq!(b.len(), 3);
        let m = [b[0], b[1], b[2]];
        assert_eq!(det(&m).abs(), 2);
    }

    #[test]
    fn rational_basis() {
        let v = [[Q::new(1, 2), Q::new(1, 2), Q::new(1, 2)], [q(1), q(0), q(0)], [q(0), q(1), q(0)], [q(0), q(0), q(1)]];
        let b = lattice_basis(&v);
        let m: [[Q; 3]; 3] = [b[0], b[1], b[2]];
        let d = rdet(m.iter().map(|r| r.to_vec()).collect());
        assert_eq!(d.abs(), Q::new(1, 2));
    }
}
