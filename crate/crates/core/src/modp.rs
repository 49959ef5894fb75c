//! Linear algebra over a prime field F_p, p < 2^31.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!((2..(1 << 31)).contains(&p));
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let phi = self.p - 1;
        let factors = prime_factors(phi);
        (2..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, phi / f) != 1))
            .unwrap_or(1)
    }

    /// Basis of the null space of an `rows × cols` matrix, one vector per free column.
    pub fn null_space(&self, matrix: &[Vec<u64>], cols: usize) -> Vec<Vec<u64>> {
        let mut m: Vec<Vec<u64>> = matrix.to_vec();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..cols {
            let Some(found) = (row..m.len()).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(row, found);
            let inv = self.inv(m[row][col]);
            for x in m[row].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for r in 0..m.len() {
                if r != row && m[r][col] != 0 {
                    let f = m[r][col];
                    for c in 0..cols {
                        let v = self.mul(f, m[row][c]);
                        m[r][c] = self.sub(m[r][c], v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == m.len() {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = self.sub(0, m[r][free]);
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial det(xI - A), lowest degree first, via Hessenberg reduction.
    pub fn charpoly(&self, a: &[Vec<u64>]) -> Vec<u64> {
        let n = a.len();
        let mut h: Vec<Vec<u64>> = a.to_vec();
        // reduce to upper Hessenberg form by similarity transforms
        for col in 0..n.saturating_sub(2) {
            let Some(piv) = (col + 1..n).find(|&r| h[r][col] != 0) else {
                continue;
            };
            if piv != col + 1 {
                h.swap(piv, col + 1);
                for row in h.iter_mut() {
                    row.swap(piv, col + 1);
                }
            }
            let inv = self.inv(h[col + 1][col]);
            for r in col + 2..n {
                let f = self.mul(h[r][col], inv);
                if f == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = self.mul(f, h[col + 1][c]);
                    h[r][c] = self.sub(h[r][c], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(f, row[r]);
                    row[col + 1] = self.add(row[col + 1], v);
                }
            }
        }
        // p_k = char poly of the leading k×k block
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 1..=n {
            let i = k - 1;
            // (x - h[i][i]) p_{k-1}
            let prev = &polys[k - 1];
            let mut next = vec![0u64; k + 1];
            for (d, &c) in prev.iter().enumerate() {
                next[d + 1] = self.add(next[d + 1], c);
                next[d] = self.sub(next[d], self.mul(c, h[i][i]));
            }
            let mut t = 1u64;
            for m in 1..=i {
                t = self.mul(t, h[i - m + 1][i - m]);
                let coef = self.mul(t, h[i - m][i]);
                for (d, &c) in polys[i - m].iter().enumerate() {
                    next[d] = self.sub(next[d], self.mul(coef, c));
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }

    pub fn eval(&self, poly: &[u64], x: u64) -> u64 {
        poly.iter()
            .rev()
            .fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrices() {
        let f = PrimeField::new(101);
        // [[2,1],[0,3]] -> (x-2)(x-3) = x^2 - 5x + 6
        let a = vec![vec![2, 1], vec![0, 3]];
        assert_eq!(f.charpoly(&a), vec![6, 96, 1]);
        // companion-like 3×3 with eigenvalues 1, 2, 3 after a change of basis
        let b = vec![vec![0, 0, 6], vec![1, 0, f.sub(0, 11)], vec![0, 1, 6]];
        let cp = f.charpoly(&b);
        for root in [1, 2, 3] {
            assert_eq!(f.eval(&cp, root), 0);
        }
        assert_eq!(cp[3], 1);
    }

    #[test]
    fn charpoly_matches_brute_force_determinants() {
        let f = PrimeField::new(13);
        let a = vec![
            vec![1, 2, 3, 4],
            vec![0, 5, 6, 7],
            vec![8, 9, 10, 11],
            vec![12, 0, 1, 2],
        ];
        let cp = f.charpoly(&a);
        for x in 0..13 {
            let m: Vec<Vec<u64>> = (0..4)
                .map(|i| {
                    (0..4)
                        .map(|j| {
                            let d = if i == j { x } else { 0 };
                            f.sub(d, a[i][j])
                        })
                        .collect()
                })
                .collect();
            assert_eq!(f.eval(&cp, x), det(&f, m));
        }
    }

    fn det(f: &PrimeField, mut m: Vec<Vec<u64>>) -> u64 {
        let n = m.len();
        let mut d = 1;
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r][c] != 0) else {
                return 0;
            };
            if p != c {
                m.swap(p, c);
                d = f.sub(0, d);
            }
            d = f.mul(d, m[c][c]);
            let inv = f.inv(m[c][c]);
            for r in c + 1..n {
                let k = f.mul(m[r][c], inv);
                for j in c..n {
                    let v = f.mul(k, m[c][j]);
                    m[r][j] = f.sub(m[r][j], v);
                }
            }
        }
        d
    }

    #[test]
    fn null_space_dimension() {
        let f = PrimeField::new(7);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = f.null_space(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot = (0..3).fold(0, |acc, i| f.add(acc, f.mul(m[0][i], v[i])));
            assert_eq!(dot, 0);
        }
    }

    #[test]
    fn primes_and_roots() {
        assert!(is_prime(421));
        assert!(!is_prime(91));
        let f = PrimeField::new(421);
        let g = f.primitive_root();
        assert_eq!(f.pow(g, 420), 1);
        assert_eq!(prime_factors(420), vec![2, 3, 5, 7]);
    }
}
