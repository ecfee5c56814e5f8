//! Small integer-arithmetic utilities: prime sieving, prime-power tests,
//! and the Kronecker symbol.

/// Primes up to and including `n`, by Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return vec![];
    }
    let n = n as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n {
        if sieve[p] {
            let mut k = p * p;
            while k <= n {
                sieve[k] = false;
                k += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(i, &b)| if b { Some(i as u64) } else { None })
        .collect()
}

/// Trial-division primality; fine for the desk-scale ranges used here.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Whether `n = p^k` for a prime `p` and `k >= 1`.
pub fn is_prime_power(n: u64) -> bool {
    prime_power_base(n).is_some()
}

/// The prime `p` with `n = p^k`, if any.
pub fn prime_power_base(n: u64) -> Option<u64> {
    if n < 2 {
        return None;
    }
    let mut m = n;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= m {
        if m % d == 0 {
            p = d;
            while m % d == 0 {
                m /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some(n); // n itself is prime
    }
    if m == 1 {
        Some(p)
    } else {
        None
    }
}

/// Kronecker symbol `(a/n)` extending the Jacobi symbol to all integers.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // factor out 2s from n
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        // (a/2) = 1 if a ≡ ±1 (mod 8), -1 if a ≡ ±3 (mod 8)
        let amod8 = a.rem_euclid(8);
        let sym2 = if amod8 == 1 || amod8 == 7 { 1 } else { -1 };
        if twos % 2 == 1 {
            result *= sym2;
        }
    }
    // now n is odd and positive: Jacobi symbol loop
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nmod8 = n % 8;
            if nmod8 == 3 || nmod8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let ps = primes_up_to(200);
        assert_eq!(ps.len(), 46);
        for p in &ps {
            assert!(is_prime(*p));
        }
        assert_eq!(ps.first(), Some(&2));
        assert_eq!(ps.last(), Some(&199));
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(2));
        assert!(is_prime_power(27));
        assert!(is_prime_power(1024));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(6));
        assert!(!is_prime_power(100));
        assert_eq!(prime_power_base(49), Some(7));
    }

    #[test]
    fn kronecker_minus_four() {
        // (-4/p) = (-1/p): 1 for p ≡ 1 (mod 4), -1 for p ≡ 3 (mod 4)
        for p in primes_up_to(200).into_iter().skip(1) {
            let expected = if p % 4 == 1 { 1 } else { -1 };
            assert_eq!(kronecker(-4, p as i64), expected, "p = {p}");
            assert_eq!(kronecker(-1, p as i64), expected, "p = {p}");
        }
        assert_eq!(kronecker(-4, 2), 0);
    }

    #[test]
    fn kronecker_quadratic_residues() {
        // (a/7) by brute squares mod 7: residues {1, 2, 4}
        for a in 1..7 {
            let is_qr = (1..7).any(|x| (x * x) % 7 == a);
            assert_eq!(kronecker(a, 7), if is_qr { 1 } else { -1 });
        }
    }
}
