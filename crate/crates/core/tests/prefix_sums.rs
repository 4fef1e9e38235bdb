use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subwindow::{FullPrefixSums, Matrix, Rect};

#[test]
fn every_rect_of_every_shape_up_to_12() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for rows in 1..=12 {
        for cols in 1..=12 {
            let m = Matrix::<i64>::from_fn(rows, cols, |_, _| rng.random_range(-50..=50)).unwrap();
            let p = FullPrefixSums::build(&m);
            for r0 in 0..rows {
                for r1 in r0..rows {
                    for c0 in 0..cols {
                        for c1 in c0..cols {
                            let rect = Rect::from_bounds(r0, r1, c0, c1).unwrap();
                            assert_eq!(p.rect_sum(&rect).unwrap(), m.region_sum(&rect).unwrap(), "{rect}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn real_weights_agree_within_rounding() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let m = Matrix::from_fn(40, 33, |_, _| rng.random_range(-1.0..1.0)).unwrap();
    let p = FullPrefixSums::build(&m);
    for _ in 0..500 {
        let (a, b) = (rng.random_range(0..40), rng.random_range(0..40));
        let (c, d) = (rng.random_range(0..33), rng.random_range(0..33));
        let rect = Rect::from_bounds(a.min(b), a.max(b), c.min(d), c.max(d)).unwrap();
        let naive: f64 = m.region_sum(&rect).unwrap();
        assert!((p.rect_sum(&rect).unwrap() - naive).abs() < 1e-9);
    }
}
