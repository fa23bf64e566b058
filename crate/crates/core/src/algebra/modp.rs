//! Polynomial arithmetic over a small prime field, enough for squarefree
//! tests and distinct-degree factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::IntPolynomial;

type Poly = Vec<u64>;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp(pub u64);

impl Fp {
    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }

    pub(crate) fn reduce(self, f: &IntPolynomial) -> Poly {
        let p = BigInt::from(self.0);
        let mut v: Poly = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&p).to_u64().unwrap())
            .collect();
        trim(&mut v);
        v
    }

    fn rem(self, a: &Poly, b: &Poly) -> Poly {
        let db = b.len() - 1;
        let inv = self.inv(b[db]);
        let mut r = a.clone();
        while r.len() > db {
            let top = r.len() - 1;
            let q = self.mul(r[top], inv);
            if q != 0 {
                for (j, &c) in b.iter().enumerate() {
                    let idx = top - db + j;
                    r[idx] = self.sub(r[idx], self.mul(q, c));
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    fn div(self, a: &Poly, b: &Poly) -> Poly {
        let db = b.len() - 1;
        if a.len() <= db {
            return vec![];
        }
        let inv = self.inv(b[db]);
        let mut r = a.clone();
        let mut q = vec![0; a.len() - db];
        for i in (0..q.len()).rev() {
            let c = self.mul(r[i + db], inv);
            q[i] = c;
            if c != 0 {
                for (j, &bc) in b.iter().enumerate() {
                    r[i + j] = self.sub(r[i + j], self.mul(c, bc));
                }
            }
        }
        trim(&mut q);
        q
    }

    fn mulmod(self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(&mut out);
        self.rem(&out, m)
    }

    fn powmod(self, base: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut result = vec![1];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(&result, &b, m);
            }
            b = self.mulmod(&b, &b, m);
            e >>= 1;
        }
        result
    }

    fn gcd(self, a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    fn monic(self, a: &Poly) -> Poly {
        match a.last() {
            None => vec![],
            Some(&l) => {
                let inv = self.inv(l);
                a.iter().map(|&c| self.mul(c, inv)).collect()
            }
        }
    }

    fn derivative(self, a: &Poly) -> Poly {
        let mut d: Poly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, (i as u64) % self.0))
            .collect();
        trim(&mut d);
        d
    }

    fn sub_poly(self, a: &Poly, b: &Poly) -> Poly {
        let n = a.len().max(b.len());
        let mut out: Poly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(&mut out);
        out
    }

    /// Degrees of the irreducible factors of `f` mod p, or `None` when the
    /// prime divides the leading coefficient or `f` is not squarefree mod p.
    pub(crate) fn factor_degrees(self, f: &IntPolynomial) -> Option<Vec<usize>> {
        let deg = f.degree()?;
        let g = self.reduce(f);
        if g.len() != deg + 1 {
            return None;
        }
        let g = self.monic(&g);
        let dg = self.derivative(&g);
        if dg.is_empty() || self.gcd(&g, &dg).len() != 1 {
            return None;
        }
        let x: Poly = vec![0, 1];
        let mut rest = g;
        let mut h = x.clone();
        let mut degrees = Vec::new();
        let mut i = 0;
        while rest.len() > 1 {
            i += 1;
            if 2 * i > rest.len() - 1 {
                degrees.push(rest.len() - 1);
                break;
            }
            h = self.powmod(&h, self.0, &rest);
            let g = self.gcd(&rest, &self.sub_poly(&h, &x));
            let gd = g.len() - 1;
            if gd > 0 {
                degrees.extend(std::iter::repeat_n(i, gd / i));
                rest = self.div(&rest, &g);
                h = self.rem(&h, &rest);
            }
        }
        Some(degrees)
    }
}

fn trim(v: &mut Poly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<usize>) -> Vec<usize> {
        v.sort();
        v
    }

    #[test]
    fn degrees_mod_small_primes() {
        // x^2 + 1 splits mod 5, stays irreducible mod 3
        let f = IntPolynomial::from_i64(&[1, 0, 1]);
        assert_eq!(sorted(Fp(5).factor_degrees(&f).unwrap()), vec![1, 1]);
        assert_eq!(Fp(3).factor_degrees(&f).unwrap(), vec![2]);
        // x^2 + 1 is not squarefree mod 2
        assert_eq!(Fp(2).factor_degrees(&f), None);
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2); mod 7 both quadratics are irreducible
        let g = IntPolynomial::from_i64(&[4, 0, 0, 0, 1]);
        assert_eq!(sorted(Fp(7).factor_degrees(&g).unwrap()), vec![2, 2]);
    }

    #[test]
    fn leading_coefficient_divisible() {
        let f = IntPolynomial::from_i64(&[1, 1, 3]);
        assert_eq!(Fp(3).factor_degrees(&f), None);
    }
}
