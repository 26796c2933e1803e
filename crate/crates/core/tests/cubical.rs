use std::collections::BTreeMap;

use phkit::complex::make_complex;
use phkit::cubical::{build_cubical, cubical_boundary, image_barcode, ImageGrid};
use phkit::reduction::{compute_barcode, Algorithm, Barcode};
use proptest::prelude::*;

type Cell = (Vec<usize>, u8);

/// Every cell of the V-construction with its value, enumerated directly.
fn cells(img: &ImageGrid) -> BTreeMap<Cell, f64> {
    let dims = img.dims().to_vec();
    let d = dims.len();
    let total: usize = dims.iter().product();
    let at = |c: &[usize]| {
        let idx = c.iter().zip(&dims).fold(0, |acc, (&x, &n)| acc * n + x);
        img.values()[idx]
    };
    let mut out = BTreeMap::new();
    for idx in 0..total {
        let mut coords = vec![0; d];
        let mut rest = idx;
        for a in (0..d).rev() {
            coords[a] = rest % dims[a];
            rest /= dims[a];
        }
        for mask in 0u8..(1 << d) {
            if (0..d).any(|a| mask & (1 << a) != 0 && coords[a] + 1 == dims[a]) {
                continue;
            }
            let mut v = f64::NEG_INFINITY;
            for corner in 0u8..(1 << d) {
                if corner & !mask != 0 {
                    continue;
                }
                let c: Vec<usize> = (0..d).map(|a| coords[a] + ((corner >> a) & 1) as usize).collect();
                v = v.max(at(&c));
            }
            out.insert((coords.clone(), mask), v);
        }
    }
    out
}

/// Proper faces of a cell.
fn faces(cell: &Cell) -> Vec<Cell> {
    let (anchor, mask) = cell;
    let d = anchor.len();
    let mut out = Vec::new();
    for sub in 0u8..(1 << d) {
        if sub & !mask != 0 || sub == *mask {
            continue;
        }
        let dropped = mask & !sub;
        for side in 0u8..(1 << d) {
            if side & !dropped != 0 {
                continue;
            }
            let a: Vec<usize> = (0..d).map(|i| anchor[i] + ((side >> i) & 1) as usize).collect();
            out.push((a, sub));
        }
    }
    out
}

/// Barcode of the barycentric subdivision: one vertex per cell, one simplex per chain of
/// faces, valued by its top cell. Its sublevel sets subdivide those of the cubical complex.
fn subdivision_barcode(img: &ImageGrid) -> Barcode {
    let cells = cells(img);
    let ids: BTreeMap<&Cell, u64> = cells.keys().enumerate().map(|(i, c)| (c, i as u64)).collect();
    let mut simplices: Vec<(Vec<u64>, f64)> = Vec::new();
    fn extend(
        chain: &mut Vec<Cell>,
        cells: &BTreeMap<Cell, f64>,
        ids: &BTreeMap<&Cell, u64>,
        top: f64,
        out: &mut Vec<(Vec<u64>, f64)>,
    ) {
        out.push((chain.iter().map(|c| ids[c]).collect(), top));
        let last = chain.last().unwrap().clone();
        for f in faces(&last) {
            chain.push(f);
            extend(chain, cells, ids, top, out);
            chain.pop();
        }
    }
    for (c, &v) in &cells {
        extend(&mut vec![c.clone()], &cells, &ids, v, &mut simplices);
    }
    compute_barcode(&make_complex(simplices).unwrap(), Algorithm::Twist, true)
}

fn image_strategy() -> impl Strategy<Value = ImageGrid> {
    prop_oneof![
        (1usize..5, 1usize..5).prop_flat_map(|(h, w)| {
            prop::collection::vec(0u8..6, h * w).prop_map(move |v| ImageGrid::new(vec![h, w], v.into_iter().map(f64::from).collect()).unwrap())
        }),
        (1usize..3, 1usize..3, 1usize..4).prop_flat_map(|(a, b, c)| {
            prop::collection::vec(0u8..6, a * b * c)
                .prop_map(move |v| ImageGrid::new(vec![a, b, c], v.into_iter().map(f64::from).collect()).unwrap())
        }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matches_barycentric_subdivision(img in image_strategy()) {
        prop_assert_eq!(image_barcode(&img, 3), subdivision_barcode(&img));
    }

    #[test]
    fn cell_counts_and_boundary(img in image_strategy()) {
        let k = build_cubical(&img);
        prop_assert_eq!(k.len(), cells(&img).len());
        let b = cubical_boundary(&k);
        let dense = b.to_dense();
        // ∂∂ = 0 over F₂
        for j in 0..b.n() {
            let mut acc = vec![0u8; b.n()];
            for &f in b.column(j) {
                for (i, row) in dense.iter().enumerate() {
                    acc[i] ^= row[f as usize];
                }
            }
            prop_assert!(acc.iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn monotone_relabelling_commutes(img in image_strategy(), shift in -10.0..10.0f64) {
        let f = |x: f64| 2.0 * x + shift;
        let mapped = image_barcode(&img.map(f).unwrap(), 3);
        let base = image_barcode(&img, 3);
        prop_assert_eq!(mapped.len(), base.len());
        for (a, b) in mapped.intervals().iter().zip(base.intervals()) {
            prop_assert_eq!(a.dim, b.dim);
            prop_assert_eq!(a.birth, f(b.birth));
            prop_assert_eq!(a.death, if b.death.is_infinite() { b.death } else { f(b.death) });
        }
        // the whole box is contractible
        prop_assert_eq!(base.essential_count(0), 1);
        prop_assert_eq!(base.intervals().iter().filter(|i| i.is_essential()).count(), 1);
    }
}
