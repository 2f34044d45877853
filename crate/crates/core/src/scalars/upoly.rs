//! Dense univariate polynomials over F_p, coefficients stored low degree first.
//!
//! Every function returns trimmed vectors (no trailing zeros); the zero
//! polynomial is the empty vector.

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue by Fermat's little theorem.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    if a.is_empty() {
        None
    } else {
        Some(a.len() - 1)
    }
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + y) % p
        })
        .collect();
    trim(out)
}

pub(crate) fn neg(a: &[u64], p: u64) -> Vec<u64> {
    a.iter().map(|&x| (p - x) % p).collect()
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    add(a, &neg(b, p), p)
}

pub(crate) fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| mul_mod(x, c, p)).collect())
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Euclidean division; `b` must be nonzero.
pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mul_mod(r[k + db], lead_inv, p);
        if c == 0 {
            continue;
        }
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mul_mod(c, bj, p)) % p;
        }
    }
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lead) => scale(a, inv_mod(lead, p), p),
    }
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

/// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm, or
/// `None` when they are not coprime.
pub(crate) fn inv_rem(a: &[u64], modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (trim(modulus.to_vec()), rem(a, modulus, p));
    let (mut s0, mut s1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = inv_mod(r0[0], p);
    Some(rem(&scale(&s0, c, p), modulus, p))
}

/// `base^e mod modulus`.
pub(crate) fn pow_rem(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], modulus, p);
    let mut b = rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
        e >>= 1;
    }
    acc
}

/// Rabin-style irreducibility test for a monic polynomial of degree `e`.
pub(crate) fn is_irreducible(g: &[u64], p: u64) -> bool {
    let e = match degree(g) {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = vec![0, 1];
    // x^(p^i) mod g, iterated
    let mut xp = x.clone();
    for _ in 1..=e / 2 {
        xp = pow_rem(&xp, p, g, p);
        let h = gcd(g, &sub(&xp, &x, p), p);
        if degree(&h) != Some(0) {
            return false;
        }
    }
    true
}

/// The first monic irreducible polynomial of degree `e` over F_p in the
/// order of increasing coefficient vectors (constant term varies fastest).
pub(crate) fn first_irreducible(p: u64, e: u32) -> Vec<u64> {
    let e = e as usize;
    let mut coeffs = vec![0u64; e];
    loop {
        let mut g = coeffs.clone();
        g.push(1);
        if is_irreducible(&g, p) {
            return g;
        }
        // odometer increment
        let mut i = 0;
        loop {
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
            assert!(i < e, "no irreducible polynomial of degree {e} over F_{p}");
        }
    }
}

pub(crate) fn fmt_poly(a: &[u64], var: &str) -> String {
    if a.is_empty() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, &c) in a.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    parts.join("+")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_division() {
        // (x+1)(x+2) and (x+1)(x+3) over F_5
        let p = 5;
        let a = mul(&[1, 1], &[2, 1], p);
        let b = mul(&[1, 1], &[3, 1], p);
        assert_eq!(gcd(&a, &b, p), vec![1, 1]);
        let (q, r) = divrem(&a, &[1, 1], p);
        assert_eq!(q, vec![2, 1]);
        assert!(r.is_empty());
    }

    #[test]
    fn irreducibles() {
        assert_eq!(first_irreducible(2, 2), vec![1, 1, 1]);
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2)); // x^4+x+1
        assert!(!is_irreducible(&[1, 0, 0, 0, 1], 2)); // (x+1)^4
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }
}
