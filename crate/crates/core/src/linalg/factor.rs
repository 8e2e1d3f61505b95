//! Factorization of integer polynomials into irreducibles over the rationals.
//!
//! Square-free decomposition first, then for each square-free part: factor
//! modulo a small prime (distinct-degree plus Cantor–Zassenhaus splitting),
//! Hensel-lift to a prime power above the Mignotte bound, and recombine lifted
//! factors by trial division over the integers.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntPolynomial;

/// Irreducible factors with multiplicities. Factors are primitive with
/// positive leading coefficient, sorted by (degree, coefficients). The
/// integer content and sign are dropped.
pub fn factor(f: &IntPolynomial) -> Vec<(IntPolynomial, usize)> {
    let mut out = Vec::new();
    for (part, mult) in f.squarefree_decomposition() {
        for g in factor_squarefree(&part) {
            out.push((g, mult));
        }
    }
    sort_factors(&mut out);
    out
}

fn sort_factors(v: &mut [(IntPolynomial, usize)]) {
    v.sort_by(|a, b| {
        a.0.degree()
            .cmp(&b.0.degree())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
    });
}

/// Irreducible factors of a primitive square-free polynomial of positive degree.
pub fn factor_squarefree(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut f = f.primitive();
    let mut out = Vec::new();
    let v = f.x_valuation();
    if v > 0 {
        out.push(IntPolynomial::x_pow(1));
        f = IntPolynomial::new(f.coeffs()[v..].to_vec());
    }
    match f.degree() {
        None | Some(0) => {}
        Some(1) => out.push(f),
        Some(_) => out.extend(zassenhaus(&f)),
    }
    out
}

fn zassenhaus(f: &IntPolynomial) -> Vec<IntPolynomial> {
    let n = f.degree().unwrap();
    let lc = f.lc();
    let df = f.derivative();

    // Try a handful of good primes, keep the one with the fewest modular factors.
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp.len() != n + 1 {
            continue;
        }
        let g = mp_gcd(&fp, &reduce(&df, p), p);
        if g.len() > 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p);
        let better = best.as_ref().is_none_or(|(_, b)| facs.len() < b.len());
        if better {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, modular) = best.expect("a good prime always exists for a square-free polynomial");
    if modular.len() == 1 {
        return vec![f.primitive()];
    }

    // Mignotte-type bound on factor coefficients, doubled for the symmetric range.
    let maxc = f.coeffs().iter().map(|c| c.abs()).max().unwrap();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * BigInt::from(n + 1) * maxc;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus *= &pb;
        k += 1;
    }

    let lc_inv = modinv(&lc, &modulus);
    let monic: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| (c * &lc_inv).mod_floor(&modulus))
        .collect();
    let lifted = multi_hensel(&monic, &modular, p, k);
    recombine(f, lifted, &modulus)
}

fn recombine(f: &IntPolynomial, mut factors: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<IntPolynomial> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut s = 1;
    while 2 * s <= factors.len() {
        let mut found = false;
        for subset in combinations(factors.len(), s) {
            let lc = rest.lc();
            let mut prod = vec![lc.mod_floor(m)];
            for &i in &subset {
                prod = bp_mul_mod(&prod, &factors[i], m);
            }
            let cand = IntPolynomial::new(prod.into_iter().map(|c| symmetric(c, m)).collect())
                .primitive();
            if let Some(q) = rest.div_exact(&cand) {
                out.push(cand);
                rest = q;
                let mut keep = Vec::new();
                for (i, g) in factors.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        keep.push(g);
                    }
                }
                factors = keep;
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        out.push(rest.primitive());
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

fn symmetric(c: BigInt, m: &BigInt) -> BigInt {
    let c = c.mod_floor(m);
    if &c * 2 > *m {
        c - m
    } else {
        c
    }
}

fn modinv(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible");
    e.x.mod_floor(m)
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

// ---- polynomials over Z/p, ascending, trimmed ----

fn reduce(f: &IntPolynomial, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    mp_trim(
        f.coeffs()
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn mp_trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn mp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    mp_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p)
            .collect(),
    )
}

fn mp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    mp_trim(out)
}

fn mp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = mp_trim(b.to_vec());
    assert!(!b.is_empty());
    let mut r = mp_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() * inv % p;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - f * c % p) % p;
        }
        q[shift] = f;
        r = mp_trim(r);
    }
    (mp_trim(q), r)
}

fn mp_monic(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|c| c * inv % p).collect()
        }
    }
}

fn mp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = mp_trim(a.to_vec());
    let mut y = mp_trim(b.to_vec());
    while !y.is_empty() {
        let r = mp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    mp_monic(&x, p)
}

/// Extended gcd: returns (g, s, t) with s a + t b = g monic.
fn mp_xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (mp_trim(a.to_vec()), mp_trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = mp_divrem(&r0, &r1, p);
        let s2 = mp_sub(&s0, &mp_mul(&q, &s1, p), p);
        let t2 = mp_sub(&t0, &mp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    let sc = |v: Vec<u64>| mp_trim(v.into_iter().map(|c| c * inv % p).collect());
    (sc(r0), sc(s0), sc(t0))
}

/// `base^e mod (modulus, p)` for a big exponent.
fn mp_powmod(base: &[u64], e: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let b = mp_divrem(base, modulus, p).1;
    for i in (0..e.bits()).rev() {
        result = mp_divrem(&mp_mul(&result, &result, p), modulus, p).1;
        if e.bit(i) {
            result = mp_divrem(&mp_mul(&result, &b, p), modulus, p).1;
        }
    }
    result
}

/// Monic irreducible factors of a monic-able square-free polynomial mod p (p odd).
fn factor_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let f = mp_monic(f, p);
    let mut out = Vec::new();
    // distinct-degree factorization
    let mut rest = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    let pb = BigUint::from(p);
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push((rest.clone(), rest.len() - 1));
            break;
        }
        h = mp_powmod(&h, &pb, &rest, p);
        let g = mp_gcd(&rest, &mp_sub(&h, &x, p), p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            rest = mp_divrem(&rest, &g, p).0;
            h = mp_divrem(&h, &rest, p).1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e77e);
    let mut result = Vec::new();
    for (g, d) in out {
        equal_degree(&g, d, p, &mut rng, &mut result);
    }
    result.sort();
    result
}

fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Vec<u64> = mp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = mp_powmod(&a, &e, f, p);
        let g = mp_gcd(f, &mp_sub(&b, &[1], p), p);
        if g.len() > 1 && g.len() < f.len() {
            let h = mp_monic(&mp_divrem(f, &g, p).0, p);
            equal_degree(&g, d, p, rng, out);
            equal_degree(&h, d, p, rng, out);
            return;
        }
    }
}

// ---- Hensel lifting over Z / p^k, BigInt coefficients in [0, m) ----

fn bp_trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn bp_mul_mod(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    bp_trim(out.into_iter().map(|c| c.mod_floor(m)).collect())
}

fn to_big(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn lift_step_poly(a: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    mp_trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Lifts `F ≡ g0 h0 (mod p)` (all monic) to `F ≡ g h (mod p^k)`.
fn hensel_two(
    big_f: &[BigInt],
    g0: &[u64],
    h0: &[u64],
    p: u64,
    k: u32,
) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s, t) = mp_xgcd(g0, h0, p);
    debug_assert!(!s.is_empty() || !t.is_empty());
    let pb = BigInt::from(p);
    let mut g = to_big(g0);
    let mut h = to_big(h0);
    let mut pk = pb.clone();
    for _ in 1..k {
        let next = &pk * &pb;
        let gh = bp_mul_mod(&g, &h, &next);
        let n = big_f.len().max(gh.len());
        let z = BigInt::zero();
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                let v = (big_f.get(i).unwrap_or(&z) - gh.get(i).unwrap_or(&z)).mod_floor(&next);
                v / &pk
            })
            .collect();
        let e = lift_step_poly(&diff, p);
        if !e.is_empty() {
            let a = mp_divrem(&mp_mul(&e, &t, p), g0, p).1;
            let b = mp_divrem(&mp_sub(&e, &mp_mul(&a, h0, p), p), g0, p).0;
            g = add_scaled(&g, &a, &pk, &next);
            h = add_scaled(&h, &b, &pk, &next);
        }
        pk = next;
    }
    (g, h)
}

fn add_scaled(base: &[BigInt], delta: &[u64], scale: &BigInt, m: &BigInt) -> Vec<BigInt> {
    let n = base.len().max(delta.len());
    let z = BigInt::zero();
    bp_trim(
        (0..n)
            .map(|i| {
                (base.get(i).unwrap_or(&z) + BigInt::from(*delta.get(i).unwrap_or(&0)) * scale)
                    .mod_floor(m)
            })
            .collect(),
    )
}

fn multi_hensel(big_f: &[BigInt], factors: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![big_f.to_vec()];
    }
    let mid = factors.len() / 2;
    let left = factors[..mid]
        .iter()
        .fold(vec![1u64], |acc, f| mp_mul(&acc, f, p));
    let right = factors[mid..]
        .iter()
        .fold(vec![1u64], |acc, f| mp_mul(&acc, f, p));
    let (g, h) = hensel_two(big_f, &left, &right, p, k);
    let mut out = multi_hensel(&g, &factors[..mid], p, k);
    out.extend(multi_hensel(&h, &factors[mid..], p, k));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    fn product(fs: &[(IntPolynomial, usize)]) -> IntPolynomial {
        fs.iter()
            .fold(IntPolynomial::one(), |acc, (g, m)| acc.mul(&g.pow(*m)))
    }

    #[test]
    fn factors_cyclotomic_product() {
        // x^6 - 1 = (x-1)(x+1)(x^2+x+1)(x^2-x+1)
        let f = poly(&[-1, 0, 0, 0, 0, 0, 1]);
        let fs = factor(&f);
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&fs), f);
    }

    #[test]
    fn irreducible_stays_whole() {
        let f = poly(&[1, -7, 1]);
        assert_eq!(factor(&f), vec![(f.clone(), 1)]);
        // x^4 + 1 is irreducible over Q but splits mod every prime
        let g = poly(&[1, 0, 0, 0, 1]);
        assert_eq!(factor(&g), vec![(g.clone(), 1)]);
    }

    #[test]
    fn multiplicities_and_x_factor() {
        let f = poly(&[0, 1]).pow(2).mul(&poly(&[-1, 1]).pow(3)).mul(&poly(&[-2, 0, 1]));
        let fs = factor(&f);
        assert_eq!(
            fs,
            vec![
                (poly(&[-1, 1]), 3),
                (poly(&[0, 1]), 2),
                (poly(&[-2, 0, 1]), 1)
            ]
        );
    }

    #[test]
    fn non_monic_factors() {
        let f = poly(&[1, 2]).mul(&poly(&[-3, 0, 5])).mul(&poly(&[7, 1, 3]));
        let fs = factor(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f.primitive());
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // (x^2-2)(x^2-3)(x^2-5) splits into many factors mod small primes
        let f = poly(&[-2, 0, 1]).mul(&poly(&[-3, 0, 1])).mul(&poly(&[-5, 0, 1]));
        let fs = factor(&f);
        assert_eq!(fs.len(), 3);
        assert!(fs.iter().all(|(g, m)| g.degree() == Some(2) && *m == 1));
    }
}
