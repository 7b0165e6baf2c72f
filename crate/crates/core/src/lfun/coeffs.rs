//! Dirichlet coefficients of the unitarized L-series.

use std::collections::BTreeMap;

use crate::arith::primes_up_to_norm;
use crate::characters::HeckeChar;
use crate::numeric::Complex;

use super::LfunError;

/// a_n = Σ_{Nm(𝔞)=n, (𝔞,𝔪)=1} χ̃(𝔞) for 0 ≤ n ≤ `n_max` (a_0 = 0).
pub fn dirichlet_coeffs(chi: &HeckeChar, n_max: usize, prec: u32) -> Result<Vec<Complex>, LfunError> {
    let ctx = chi.ctx();
    let mut by_ell: BTreeMap<u64, Vec<(u32, Complex)>> = BTreeMap::new();
    for p in primes_up_to_norm(ctx, n_max as u64) {
        let value = if chi.is_coprime(p.ideal()) { chi.eval_unitary_prime(&p)?.embed(prec) } else { Complex::zero(prec) };
        by_ell.entry(p.ell()).or_default().push((p.residue_degree(), value));
    }
    // Local factors: c_ℓ[k] is the coefficient of ℓ^k.
    let mut local: BTreeMap<u64, Vec<Complex>> = BTreeMap::new();
    for (&ell, primes) in &by_ell {
        let mut kmax = 0usize;
        let mut q = 1u64;
        while q.saturating_mul(ell) <= n_max as u64 {
            q *= ell;
            kmax += 1;
        }
        let mut c = vec![Complex::zero(prec); kmax + 1];
        c[0] = Complex::one(prec);
        for (f, u) in primes {
            let f = *f as usize;
            let mut next = c.clone();
            // Multiply by 1/(1 − u T^f), truncated.
            for k in f..=kmax {
                let t = &next[k - f] * u;
                next[k] = &next[k] + &t;
            }
            c = next;
        }
        local.insert(ell, c);
    }
    let spf = smallest_prime_factors(n_max);
    let mut a = vec![Complex::zero(prec); n_max + 1];
    if n_max >= 1 {
        a[1] = Complex::one(prec);
    }
    for n in 2..=n_max {
        let ell = spf[n];
        let mut m = n;
        let mut k = 0;
        while m % ell == 0 {
            m /= ell;
            k += 1;
        }
        a[n] = match local.get(&(ell as u64)) {
            Some(c) => &a[m] * &c[k],
            None => Complex::zero(prec),
        };
    }
    Ok(a)
}

fn smallest_prime_factors(n: usize) -> Vec<usize> {
    let mut spf = vec![0usize; n + 1];
    for i in 2..=n {
        if spf[i] == 0 {
            let mut j = i;
            while j <= n {
                if spf[j] == 0 {
                    spf[j] = i;
                }
                j += i;
            }
        }
    }
    spf
}
