//! Word-sized modular arithmetic.

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    add_mod(a, m - b % m, m)
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub fn neg_mod(a: u64, m: u64) -> u64 {
    (m - a % m) % m
}

/// Signed residue to `[0, m)`.
pub fn from_i64(a: i64, m: u64) -> u64 {
    a.rem_euclid(m as i64) as u64
}

/// Legendre symbol (a/l) for odd prime l, as -1, 0 or 1.
pub fn legendre(a: u64, l: u64) -> i8 {
    let a = a % l;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (l - 1) / 2, l) == 1 {
        1
    } else {
        -1
    }
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(a: i64, n: u64) -> i8 {
    assert!(n % 2 == 1, "jacobi needs odd modulus");
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut s = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                s = -s;
            }
        }
        (a, n) = (n, a);
        if a % 4 == 3 && n % 4 == 3 {
            s = -s;
        }
        a %= n;
    }
    if n == 1 {
        s
    } else {
        0
    }
}

/// Kronecker symbol (d/n) for positive n.
pub fn kronecker(d: i64, n: u64) -> i8 {
    assert!(n > 0);
    let mut n = n;
    let mut s = 1i8;
    while n.is_multiple_of(2) {
        n /= 2;
        if d % 2 == 0 {
            return 0;
        }
        if matches!(d.rem_euclid(8), 3 | 5) {
            s = -s;
        }
    }
    if n == 1 {
        s
    } else {
        s * jacobi(d, n)
    }
}

/// Distinct prime factors of a word-sized integer by trial division.
pub fn small_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo `m` (a unit), given the group exponent `n`.
pub fn mult_order(a: u64, m: u64, n: u64) -> u64 {
    let mut ord = n;
    for q in small_prime_factors(n) {
        while ord.is_multiple_of(q) && pow_mod(a, ord / q, m) == 1 {
            ord /= q;
        }
    }
    ord
}

/// Smallest primitive root modulo an odd prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let qs = small_prime_factors(p - 1);
    (2..p)
        .find(|&g| qs.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("primes have primitive roots")
}

/// Smallest generator of (Z/q^a)^x for odd prime q.
pub fn primitive_root_prime_power(q: u64, a: u32) -> u64 {
    let g = primitive_root(q);
    if a == 1 {
        return g;
    }
    // g or g + q generates mod q^2, hence mod every q^a.
    if pow_mod(g, q - 1, q * q) != 1 {
        g
    } else {
        g + q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic() {
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(legendre(2, 7), 1);
        assert_eq!(legendre(3, 7), -1);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(11), 2);
        assert_eq!(primitive_root(13), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(mult_order(2, 7, 6), 3);
    }

    #[test]
    fn kronecker_matches_legendre_on_odd_primes() {
        for l in [3u64, 5, 7, 11, 13, 101] {
            for a in -30i64..30 {
                assert_eq!(kronecker(a, l), legendre(from_i64(a, l), l));
            }
        }
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(8, 2), 0);
    }

    #[test]
    fn prime_power_roots_generate() {
        for (q, a) in [(3u64, 3u32), (5, 2), (7, 2), (13, 2)] {
            let m = q.pow(a);
            let phi = m / q * (q - 1);
            let g = primitive_root_prime_power(q, a);
            assert_eq!(mult_order(g, m, phi), phi);
        }
    }
}
