use phkit::datasets::{
    generate_fractal, generate_klein, generate_uniform, generate_vicsek, klein_point, AngleInit, FractalParams,
    SampleMode, VicsekParams, Weighting,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fractal_networks_are_connected(b in 1u32..4, extra in 1u32..4, k in 2u32..4, seed in any::<u64>()) {
        let params = FractalParams { b, n: b + extra, k, weighting: Weighting::Random };
        let g = generate_fractal(&params, seed).unwrap();
        prop_assert_eq!(g.node_count(), 1usize << (b + extra));
        prop_assert!(g.is_connected());
        // each doubling copies every edge and adds the inter-copy edges
        let base = 1u64 << b;
        let expected = (1..=extra).fold(base * (base - 1) / 2, |e, j| 2 * e + params.inter_edges(j));
        prop_assert_eq!(g.edges().len() as u64, expected);
    }

    #[test]
    fn klein_points_lie_on_the_surface(seed in any::<u64>()) {
        for (p, q) in generate_klein(9, SampleMode::Random, seed).unwrap().iter().zip(generate_klein(9, SampleMode::Random, seed).unwrap()) {
            prop_assert_eq!(*p, q);
        }
        let grid = generate_klein(16, SampleMode::Grid, seed).unwrap();
        prop_assert_eq!(grid[0], klein_point(0.0, 0.0));
    }
}

#[test]
fn uniform_is_seeded() {
    assert_eq!(generate_uniform(10, 4, 1), generate_uniform(10, 4, 1));
    assert_ne!(generate_uniform(10, 4, 1), generate_uniform(10, 4, 2));
}

#[test]
fn vicsek_without_noise_keeps_a_common_heading() {
    let params = VicsekParams {
        n: 20,
        eta: 0.0,
        steps: 50,
        init: AngleInit::Constant(0.5),
        ..Default::default()
    };
    let frames = generate_vicsek(&params, 3, &[0, 50]).unwrap();
    for p in &frames[1] {
        assert!((p[2] - 0.5).abs() < 1e-9, "{p:?}");
    }
    assert!(frames[1].iter().all(|p| (0.0..5.0).contains(&p[0]) && (0.0..5.0).contains(&p[1])));
}
