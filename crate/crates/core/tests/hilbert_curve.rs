use hilbtex::hilbert::{unfold, HilbertMap};
use hilbtex::ScalarGrid;
use proptest::prelude::*;

#[test]
fn exhaustive_bijection_and_adjacency() {
    for level in 1..=8 {
        let map = HilbertMap::new(level).unwrap();
        let side = map.side() as usize;
        let mut seen = vec![false; side * side];
        let mut prev: Option<(u64, u64)> = None;
        for d in 0..map.total() {
            let (x, y) = map.index_to_xy(d).unwrap();
            let cell = y as usize * side + x as usize;
            assert!(!seen[cell], "level {level}: ({x},{y}) visited twice");
            seen[cell] = true;
            assert_eq!(map.xy_to_index(x, y).unwrap(), d);
            if let Some((px, py)) = prev {
                assert_eq!(px.abs_diff(x) + py.abs_diff(y), 1, "level {level} step {d}");
            }
            prev = Some((x, y));
        }
        assert!(seen.iter().all(|&s| s));
    }
}

#[test]
fn coarse_curve_is_nested_in_fine_curve() {
    for level in 2..=7 {
        let fine = HilbertMap::new(level).unwrap();
        let coarse = HilbertMap::new(level - 1).unwrap();
        let halved: Vec<(u64, u64)> = fine
            .path()
            .collect::<Vec<_>>()
            .chunks(4)
            .map(|block| {
                let (x, y) = (block[0].0 / 2, block[0].1 / 2);
                assert!(block.iter().all(|&(bx, by)| (bx / 2, by / 2) == (x, y)));
                (x, y)
            })
            .collect();
        assert_eq!(halved, coarse.path().collect::<Vec<_>>(), "level {level}");
    }
}

#[test]
fn every_cell_maps_to_a_unique_index() {
    let map = HilbertMap::new(2).unwrap();
    let mut indices: Vec<u64> = (0..4)
        .flat_map(|y| (0..4).map(move |x| (x, y)))
        .map(|(x, y)| map.xy_to_index(x, y).unwrap())
        .collect();
    indices.sort_unstable();
    assert_eq!(indices, (0..16).collect::<Vec<_>>());
}

proptest! {
    #[test]
    fn unfold_is_a_permutation_of_pixels(level in 1u32..6, seed in any::<u64>()) {
        let side = 1usize << level;
        let values: Vec<f64> = (0..side * side)
            .map(|i| ((i as u64).wrapping_mul(seed | 1).rotate_left(17) % 1000) as f64)
            .collect();
        let grid = ScalarGrid::from_values(values.clone()).unwrap();
        let seq = unfold(&grid);
        prop_assert_eq!(seq.len(), side * side);
        let map = HilbertMap::new(level).unwrap();
        for (d, &v) in seq.as_slice().iter().enumerate() {
            let (x, y) = map.index_to_xy(d as u64).unwrap();
            prop_assert_eq!(v, grid.get(x as usize, y as usize));
        }
        let mut a = values;
        let mut b = seq.0.clone();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert_eq!(a, b);
    }
}
