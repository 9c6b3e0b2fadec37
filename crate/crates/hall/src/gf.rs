//! Small finite fields GF(p^k) with full operation tables. Elements are
//! encoded as integers in 0..q whose base-p digits are the coefficients of a
//! residue polynomial modulo a fixed irreducible.

use crate::HallError;

pub struct Gf {
    pub q: u16,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

fn factor_prime_power(q: u16) -> Option<(u16, u32)> {
    for p in 2..=q {
        if q % p == 0 {
            let mut k = 0;
            let mut m = q;
            while m % p == 0 {
                m /= p;
                k += 1;
            }
            return if m == 1 { Some((p, k)) } else { None };
        }
    }
    None
}

fn digits(mut e: u16, p: u16, k: u32) -> Vec<u16> {
    let mut d = Vec::with_capacity(k as usize);
    for _ in 0..k {
        d.push(e % p);
        e /= p;
    }
    d
}

fn undigits(d: &[u16], p: u16) -> u16 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_mod(a: &[u16], b: &[u16], modp: &[u16], p: u16) -> Vec<u16> {
    let k = modp.len() - 1;
    let mut prod = vec![0u16; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // Reduce by the monic modulus from the top.
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            prod[d] = 0;
            for (i, &m) in modp.iter().enumerate().take(k) {
                let idx = d - k + i;
                prod[idx] = (prod[idx] + c * (p - m % p) % p + p) % p;
            }
        }
    }
    prod.truncate(k.max(1));
    prod
}

fn is_irreducible(f: &[u16], p: u16) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for enc in 0..count {
            let mut g: Vec<u16> = (0..d)
                .map(|i| ((enc / (p as u64).pow(i as u32)) % p as u64) as u16)
                .collect();
            g.push(1);
            if poly_rem_is_zero(f, &g, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(f: &[u16], g: &[u16], p: u16) -> bool {
    let mut r: Vec<u16> = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        if lead != 0 {
            let shift = r.len() - 1 - dg;
            for (i, &c) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + lead * (p - c % p) % p + p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}

impl Gf {
    pub fn new(q: u16) -> Result<Gf, HallError> {
        let (p, k) = factor_prime_power(q)
            .ok_or_else(|| HallError::BadQ(format!("{q} is not a prime power")))?;
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            'outer: for enc in 0..(p as u64).pow(k) {
                let mut f: Vec<u16> = (0..k)
                    .map(|i| ((enc / (p as u64).pow(i)) % p as u64) as u16)
                    .collect();
                f.push(1);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break 'outer;
                }
            }
            found.expect("an irreducible polynomial of each degree exists")
        };
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..q {
            let da = digits(a, p, k);
            let nd: Vec<u16> = da.iter().map(|&c| (p - c) % p).collect();
            neg[a as usize] = undigits(&nd, p);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u16> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a as usize * n + b as usize] = undigits(&s, p);
                let m = poly_mul_mod(&da, &db, &modulus, p);
                mul[a as usize * n + b as usize] = undigits(&m, p);
            }
        }
        for a in 1..q {
            for b in 1..q {
                if mul[a as usize * n + b as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
            assert_ne!(inv[a as usize], 0, "every nonzero element has an inverse");
        }
        Ok(Gf { q, add, mul, neg, inv })
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        assert_ne!(a, 0);
        self.inv[a as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_hold_for_all_supported_sizes() {
        for q in [2u16, 3, 4, 5, 7, 8, 9] {
            let f = Gf::new(q).unwrap();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn six_is_not_a_prime_power() {
        assert!(matches!(Gf::new(6), Err(HallError::BadQ(_))));
    }

    #[test]
    fn gf4_has_characteristic_two() {
        let f = Gf::new(4).unwrap();
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0);
        }
        // The two elements outside the prime field are inverse to each other.
        assert_eq!(f.mul(2, 3), 1);
    }
}
