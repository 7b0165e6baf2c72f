//! Structure of a finite abelian group given by its multiplication law.

/// Invariant-factor decomposition G ≅ ⊕ ℤ/dᵢ with d₁ | d₂ | … and a full
/// discrete-log table.
#[derive(Clone, Debug)]
pub struct AbelianStructure {
    pub invariants: Vec<u64>,
    /// Element indices of the generators, one per invariant factor.
    pub gens: Vec<usize>,
    dlog: Vec<Vec<u64>>,
}

impl AbelianStructure {
    /// Analyze the group on elements 0..n with the given identity and law.
    pub fn analyze<F: Fn(usize, usize) -> usize>(n: usize, identity: usize, mul: F) -> Self {
        // Greedy generating set with triangular relations.
        let mut gens: Vec<usize> = Vec::new();
        let mut rels: Vec<Vec<i128>> = Vec::new();
        let mut coords: Vec<Option<Vec<i128>>> = vec![None; n];
        coords[identity] = Some(Vec::new());
        let mut members = vec![identity];
        let order_of = |g: usize| {
            let (mut x, mut k) = (g, 1usize);
            while x != identity {
                x = mul(x, g);
                k += 1;
            }
            k
        };
        let orders: Vec<usize> = (0..n).map(order_of).collect();
        while members.len() < n {
            let g = (0..n).filter(|&x| coords[x].is_none()).max_by(|&x, &y| orders[x].cmp(&orders[y]).then(y.cmp(&x))).unwrap();
            let k = gens.len();
            for c in coords.iter_mut().flatten() {
                c.push(0);
            }
            // Smallest m with gᵐ in the current subgroup.
            let (mut pw, mut m) = (g, 1i128);
            while coords[pw].is_none() {
                pw = mul(pw, g);
                m += 1;
            }
            let mut rel: Vec<i128> = coords[pw].clone().unwrap().iter().map(|v| -v).collect();
            rel[k] = m;
            for r in rels.iter_mut() {
                r.push(0);
            }
            rels.push(rel);
            let old = members.clone();
            let mut gp = g;
            for e in 1..m {
                for &h in &old {
                    let x = mul(h, gp);
                    let mut c = coords[h].clone().unwrap();
                    c[k] = e;
                    coords[x] = Some(c);
                    members.push(x);
                }
                gp = mul(gp, g);
            }
            gens.push(g);
        }
        let k = gens.len();
        let (diag, v, vinv) = smith(rels, k);
        let mut invariants = Vec::new();
        let mut new_gens = Vec::new();
        let mut keep = Vec::new();
        for j in 0..k {
            let dj = diag[j].unsigned_abs() as u64;
            if dj == 1 {
                continue;
            }
            keep.push((j, dj));
            invariants.push(dj);
            // Generator with old coordinates given by row j of V⁻¹.
            let mut x = identity;
            for (i, &g) in gens.iter().enumerate() {
                let e = vinv[j][i].rem_euclid(orders[g] as i128) as u64;
                x = mul(x, pow(&mul, identity, g, e));
            }
            new_gens.push(x);
        }
        let dlog = coords
            .into_iter()
            .map(|c| {
                let c = c.unwrap();
                keep.iter()
                    .map(|&(j, dj)| {
                        let s: i128 = (0..k).map(|i| c[i] * v[i][j]).sum();
                        s.rem_euclid(dj as i128) as u64
                    })
                    .collect()
            })
            .collect();
        AbelianStructure { invariants, gens: new_gens, dlog }
    }

    pub fn order(&self) -> u64 {
        self.invariants.iter().product()
    }

    /// Exponents of an element on the generators.
    pub fn dlog(&self, x: usize) -> &[u64] {
        &self.dlog[x]
    }
}

fn pow<F: Fn(usize, usize) -> usize>(mul: &F, identity: usize, g: usize, mut e: u64) -> usize {
    let (mut acc, mut b) = (identity, g);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

/// Smith normal form U·R·V = diag with divisibility chain. Returns
/// (diagonal, V, V⁻¹).
#[allow(clippy::type_complexity)]
fn smith(mut r: Vec<Vec<i128>>, k: usize) -> (Vec<i128>, Vec<Vec<i128>>, Vec<Vec<i128>>) {
    let ident = |k: usize| (0..k).map(|i| (0..k).map(|j| i128::from(i == j)).collect()).collect::<Vec<Vec<i128>>>();
    let mut v = ident(k);
    let mut vinv = ident(k);
    // Column op: col_j −= q·col_i, mirrored as row_i += q·row_j on V⁻¹.
    let col_sub = |r: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, j: usize, i: usize, q: i128| {
        for row in r.iter_mut() {
            row[j] -= q * row[i];
        }
        for row in v.iter_mut() {
            row[j] -= q * row[i];
        }
        let row_j = vinv[j].clone();
        for (dst, src) in vinv[i].iter_mut().zip(&row_j) {
            *dst += q * src;
        }
    };
    let col_swap = |r: &mut Vec<Vec<i128>>, v: &mut Vec<Vec<i128>>, vinv: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in r.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
        vinv.swap(i, j);
    };
    for t in 0..k {
        loop {
            // Pivot: smallest nonzero entry in the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in t..k {
                for j in t..k {
                    if r[i][j] != 0 && best.is_none_or(|(bi, bj)| r[i][j].abs() < r[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            r.swap(t, pi);
            col_swap(&mut r, &mut v, &mut vinv, t, pj);
            let p = r[t][t];
            let mut clean = true;
            for i in t + 1..k {
                let q = r[i][t].div_euclid(p);
                if q != 0 {
                    let rt = r[t].clone();
                    for (x, y) in r[i].iter_mut().zip(rt.iter()) {
                        *x -= q * y;
                    }
                }
                if r[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..k {
                let q = r[t][j].div_euclid(p);
                if q != 0 {
                    col_sub(&mut r, &mut v, &mut vinv, j, t, q);
                }
                if r[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any entry not divisible by the pivot into row t.
            let bad = (t + 1..k).find(|&i| (t + 1..k).any(|j| r[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let ri = r[i].clone();
                    for (x, y) in r[t].iter_mut().zip(ri.iter()) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
    }
    let diag = (0..k).map(|i| r[i][i].abs()).collect();
    (diag, v, vinv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product_group(ms: &[usize]) -> (usize, impl Fn(usize, usize) -> usize + '_) {
        let n: usize = ms.iter().product();
        let mul = move |x: usize, y: usize| {
            let (mut x, mut y, mut out, mut scale) = (x, y, 0, 1);
            for &m in ms {
                out += ((x % m + y % m) % m) * scale;
                scale *= m;
                x /= m;
                y /= m;
            }
            out
        };
        (n, mul)
    }

    #[test]
    fn invariant_factors() {
        for (ms, inv) in [(vec![2usize, 3], vec![6u64]), (vec![2, 4], vec![2, 4]), (vec![6, 4], vec![2, 12]), (vec![3, 3, 9], vec![3, 3, 9]), (vec![1], vec![])]
        {
            let (n, mul) = product_group(&ms);
            let s = AbelianStructure::analyze(n, 0, &mul);
            assert_eq!(s.invariants, inv, "{ms:?}");
            // dlog reconstructs every element.
            for x in 0..n {
                let mut y = 0;
                for (g, &e) in s.gens.iter().zip(s.dlog(x)) {
                    y = mul(y, pow(&mul, 0, *g, e));
                }
                assert_eq!(x, y);
            }
        }
    }
}
