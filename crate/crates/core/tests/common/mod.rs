//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use phkit::complex::{make_complex, FilteredComplex};
use phkit::datasets::SplitMix64;

/// Random filtered complex with at most `max_size` simplices and dimension at most
/// `max_dim`. Values are small integers so ties are frequent.
pub fn random_complex(rng: &mut SplitMix64, max_size: usize, max_dim: usize) -> FilteredComplex {
    let n_vertices = 2 + rng.below(6);
    let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
    for v in 0..n_vertices {
        set.insert(vec![v]);
    }
    // grow by adding random simplices together with all their faces
    for _ in 0..40 {
        let k = 2 + rng.below(max_dim as u64) as usize;
        let mut verts: Vec<u64> = Vec::new();
        while verts.len() < k.min(n_vertices as usize) {
            let v = rng.below(n_vertices);
            if !verts.contains(&v) {
                verts.push(v);
            }
        }
        verts.sort();
        let faces = all_faces(&verts);
        let new: Vec<_> = faces.into_iter().filter(|f| !set.contains(f)).collect();
        if set.len() + new.len() > max_size {
            continue;
        }
        set.extend(new);
    }
    let mut by_len: Vec<Vec<u64>> = set.into_iter().collect();
    by_len.sort_by_key(|s| s.len());
    let mut values: BTreeMap<Vec<u64>, f64> = BTreeMap::new();
    for s in by_len {
        let base = if s.len() == 1 {
            rng.below(4) as f64
        } else {
            (0..s.len())
                .map(|skip| {
                    let f: Vec<u64> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    values[&f]
                })
                .fold(f64::NEG_INFINITY, f64::max)
        };
        let v = base + rng.below(3) as f64;
        values.insert(s, v);
    }
    make_complex(values).expect("generated complex is valid")
}

/// Every non-empty subset of `verts`.
pub fn all_faces(verts: &[u64]) -> Vec<Vec<u64>> {
    let k = verts.len();
    (1u32..(1 << k))
        .map(|mask| (0..k).filter(|i| mask & (1 << i) != 0).map(|i| verts[i]).collect())
        .collect()
}

/// Rank over F₂ of the given vectors (bitsets over at most 128 coordinates).
pub fn rank_f2(mut rows: Vec<u128>) -> usize {
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r] & mask != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for r in 0..rows.len() {
            if r != rank && rows[r] & mask != 0 {
                rows[r] ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the null space of the map sending basis vector `i` to `images[i]`.
fn kernel_f2(images: &[u128]) -> Vec<u128> {
    // augmented elimination: track which inputs combine to each row
    let mut rows: Vec<(u128, u128)> = images.iter().enumerate().map(|(i, &im)| (im, 1u128 << i)).collect();
    let mut rank = 0;
    for bit in 0..128 {
        let mask = 1u128 << bit;
        let Some(p) = (rank..rows.len()).find(|&r| rows[r].0 & mask != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank];
        for r in 0..rows.len() {
            if r != rank && rows[r].0 & mask != 0 {
                rows[r].0 ^= pivot.0;
                rows[r].1 ^= pivot.1;
            }
        }
        rank += 1;
    }
    rows[rank..].iter().map(|r| r.1).collect()
}

/// Interval multiset `(dim, birth, death)` computed from persistent Betti numbers by
/// inclusion–exclusion, with everything done on dense matrices. Zero-length intervals do
/// not appear.
pub fn persistence_oracle(k: &FilteredComplex) -> Vec<(usize, f64, f64)> {
    let n = k.len();
    assert!(n <= 128);
    let index: BTreeMap<Vec<u64>, usize> = (0..n).map(|i| (k.simplex(i).to_vec(), i)).collect();
    let boundary: Vec<u128> = (0..n)
        .map(|i| {
            let s = k.simplex(i);
            if s.len() == 1 {
                return 0;
            }
            (0..s.len()).fold(0u128, |acc, skip| {
                let f: Vec<u64> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                acc | (1u128 << index[&f])
            })
        })
        .collect();
    let mut levels: Vec<f64> = k.values().to_vec();
    levels.sort_by(f64::total_cmp);
    levels.dedup();
    let l = levels.len();
    let top = k.max_dim();
    let in_level = |i: usize, t: usize| k.value(i) <= levels[t];

    // beta[p][i][j] for 0 <= i <= j < l
    let mut out = Vec::new();
    for p in 0..=top {
        let mut beta = vec![vec![0i64; l]; l];
        for i in 0..l {
            let chains: Vec<usize> = (0..n).filter(|&s| k.dim(s) == p && in_level(s, i)).collect();
            let images: Vec<u128> = chains.iter().map(|&s| boundary[s]).collect();
            let cycles: Vec<u128> = kernel_f2(&images)
                .into_iter()
                .map(|combo| {
                    chains
                        .iter()
                        .enumerate()
                        .filter(|&(c, _)| combo & (1u128 << c) != 0)
                        .fold(0u128, |acc, (_, &s)| acc | (1u128 << s))
                })
                .collect();
            for j in i..l {
                let bounds: Vec<u128> = (0..n)
                    .filter(|&s| k.dim(s) == p + 1 && in_level(s, j))
                    .map(|s| boundary[s])
                    .collect();
                let rb = rank_f2(bounds.clone());
                let mut both = cycles.clone();
                both.extend(bounds);
                beta[i][j] = (rank_f2(both) - rb) as i64;
            }
        }
        let b = |i: isize, j: usize| if i < 0 { 0 } else { beta[i as usize][j] };
        for i in 0..l {
            for j in i + 1..l {
                let mu = b(i as isize, j - 1) - b(i as isize, j) - b(i as isize - 1, j - 1) + b(i as isize - 1, j);
                assert!(mu >= 0);
                for _ in 0..mu {
                    out.push((p, levels[i], levels[j]));
                }
            }
            let mu = b(i as isize, l - 1) - b(i as isize - 1, l - 1);
            assert!(mu >= 0);
            for _ in 0..mu {
                out.push((p, levels[i], f64::INFINITY));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)));
    out
}

/// Exhaustive diagram distance over all partial injections `X -> Y`; unmatched points go
/// to the diagonal. `p = None` gives the bottleneck distance. Ground metric L∞.
pub fn brute_distance(x: &[(f64, f64)], y: &[(f64, f64)], p: Option<f64>) -> f64 {
    let cost = |a: (f64, f64), b: (f64, f64)| {
        if a.1.is_infinite() || b.1.is_infinite() {
            if a.1.is_infinite() && b.1.is_infinite() {
                (a.0 - b.0).abs()
            } else {
                f64::INFINITY
            }
        } else {
            (a.0 - b.0).abs().max((a.1 - b.1).abs())
        }
    };
    let diag = |a: (f64, f64)| (a.1 - a.0) / 2.0;
    let combine = |costs: &[f64]| match p {
        None => costs.iter().copied().fold(0.0, f64::max),
        Some(p) => costs.iter().map(|c| c.powf(p)).sum::<f64>().powf(1.0 / p),
    };
    let mut best = f64::INFINITY;
    let mut assign = vec![usize::MAX; x.len()];
    fn go(
        i: usize,
        x: &[(f64, f64)],
        y: &[(f64, f64)],
        assign: &mut Vec<usize>,
        used: &mut Vec<bool>,
        eval: &mut dyn FnMut(&[usize]),
    ) {
        if i == x.len() {
            eval(assign);
            return;
        }
        assign[i] = usize::MAX;
        go(i + 1, x, y, assign, used, eval);
        for j in 0..y.len() {
            if !used[j] {
                used[j] = true;
                assign[i] = j;
                go(i + 1, x, y, assign, used, eval);
                used[j] = false;
            }
        }
    }
    let mut used = vec![false; y.len()];
    let mut eval = |a: &[usize]| {
        let mut costs = Vec::new();
        let mut hit = vec![false; y.len()];
        for (i, &j) in a.iter().enumerate() {
            if j == usize::MAX {
                costs.push(diag(x[i]));
            } else {
                hit[j] = true;
                costs.push(cost(x[i], y[j]));
            }
        }
        for (j, h) in hit.iter().enumerate() {
            if !h {
                costs.push(diag(y[j]));
            }
        }
        let c = combine(&costs);
        if c < best {
            best = c;
        }
    };
    go(0, x, y, &mut assign, &mut used, &mut eval);
    best
}

/// Random diagram with at most `max_points` finite points and `essentials` infinite ones,
/// coordinates on a coarse grid so ties and repeated points occur.
pub fn random_diagram(rng: &mut SplitMix64, max_points: usize, essentials: usize) -> Vec<(f64, f64)> {
    let count = rng.below(max_points as u64 + 1) as usize;
    let mut pts: Vec<(f64, f64)> = (0..count)
        .map(|_| {
            let b = rng.below(20) as f64 * 0.25;
            let d = b + (1 + rng.below(16)) as f64 * 0.25;
            (b, d)
        })
        .collect();
    for _ in 0..essentials {
        pts.push((rng.below(20) as f64 * 0.25, f64::INFINITY));
    }
    pts
}

/// Random points in `[0, 1)^d`.
pub fn random_points(rng: &mut SplitMix64, n: usize, d: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..d).map(|_| rng.next_f64()).collect()).collect()
}
