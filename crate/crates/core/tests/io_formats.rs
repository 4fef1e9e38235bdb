use image::{DynamicImage, ImageFormat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subwindow::datagen::{generate, GenSpec};
use subwindow::io::*;
use subwindow::{Error, Location, Matrix};

/// Builds a netpbm file by hand: `channels` is 1 (PGM) or 3 (PPM).
fn encode_pnm(width: usize, height: usize, channels: usize, maxval: u16, samples: &[u16], binary: bool) -> Vec<u8> {
    let magic = match (channels, binary) {
        (1, false) => "P2",
        (1, true) => "P5",
        (3, false) => "P3",
        _ => "P6",
    };
    let mut out = format!("{magic}\n# generated\n{width} {height}\n{maxval}\n").into_bytes();
    if binary {
        for &s in samples {
            if maxval > 255 {
                out.extend_from_slice(&s.to_be_bytes());
            } else {
                out.push(s as u8);
            }
        }
    } else {
        for (i, s) in samples.iter().enumerate() {
            out.extend_from_slice(s.to_string().as_bytes());
            out.push(if (i + 1) % (width * channels) == 0 { b'\n' } else { b' ' });
        }
    }
    out
}

/// Samples of one channel as decoded by the `image` crate.
fn reference_channel(bytes: &[u8], channel: usize) -> (usize, usize, Vec<u16>) {
    let img = image::load_from_memory_with_format(bytes, ImageFormat::Pnm).unwrap();
    let (w, h) = (img.width() as usize, img.height() as usize);
    let samples: Vec<u16> = match img {
        DynamicImage::ImageLuma8(b) => b.into_raw().into_iter().map(u16::from).collect(),
        DynamicImage::ImageLuma16(b) => b.into_raw(),
        DynamicImage::ImageRgb8(b) => b.into_raw().into_iter().skip(channel).step_by(3).map(u16::from).collect(),
        DynamicImage::ImageRgb16(b) => b.into_raw().into_iter().skip(channel).step_by(3).collect(),
        other => panic!("unexpected color type {:?}", other.color()),
    };
    (h, w, samples)
}

#[test]
fn netpbm_agrees_with_second_decoder() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let dir = tempfile::tempdir().unwrap();
    for case in 0..24 {
        let (w, h) = (rng.random_range(1..40), rng.random_range(1..40));
        let channels = if case % 2 == 0 { 1 } else { 3 };
        let binary = case % 4 < 2;
        let maxval = if case % 3 == 0 { 65535 } else { 255 };
        let samples: Vec<u16> = (0..w * h * channels).map(|_| rng.random_range(0..=maxval)).collect();
        let bytes = encode_pnm(w, h, channels, maxval, &samples, binary);
        let path = dir.path().join(format!("img{case}"));
        std::fs::write(&path, &bytes).unwrap();

        for (idx, ch) in [Channel::R, Channel::G, Channel::B].into_iter().enumerate().take(channels) {
            let ours: Matrix<f64> =
                if channels == 1 { read_pgm_channel(&path).unwrap() } else { read_ppm_channel(&path, ch).unwrap() };
            let (rows, cols, reference) = reference_channel(&bytes, idx);
            assert_eq!((ours.rows(), ours.cols()), (rows, cols), "case {case}");
            let expected: Vec<f64> = reference.into_iter().map(f64::from).collect();
            assert_eq!(ours.as_slice(), expected.as_slice(), "case {case} channel {idx}");
        }
    }
}

#[test]
fn pgm_is_not_a_ppm() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("gray.pgm");
    std::fs::write(&path, b"P2\n1 1\n255\n3\n").unwrap();
    assert!(read_ppm_channel::<f64>(&path, Channel::R).is_err());
    assert_eq!(read_pgm_channel::<f64>(&path).unwrap().as_slice(), &[3.0]);
}

#[test]
fn csv_round_trip_is_lossless() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.csv");
    for seed in 0..10 {
        let m = generate(&GenSpec::uniform(8, 8, seed)).unwrap();
        write_matrix_csv(&m, &path).unwrap();
        assert_eq!(read_matrix_csv::<f64>(&path).unwrap(), m);
    }
    let extremes = Matrix::from_rows(&[[f64::MAX, f64::MIN_POSITIVE, -0.0], [1e-300, 0.1 + 0.2, -7.0]]).unwrap();
    write_matrix_csv(&extremes, &path).unwrap();
    assert_eq!(read_matrix_csv::<f64>(&path).unwrap(), extremes);
}

#[test]
fn csv_errors_name_lines() {
    let err = parse_matrix_csv::<f64, _>("1,2\n3\n".as_bytes()).unwrap_err();
    assert!(matches!(err, Error::Parse { at: Location::Line(2), .. }), "{err}");
    let err = parse_matrix_csv::<f64, _>("1,2\n3,x\n".as_bytes()).unwrap_err();
    assert!(matches!(err, Error::Parse { at: Location::Line(2), .. }), "{err}");
    let err = parse_matrix_csv::<f64, _>("1,NaN\n".as_bytes()).unwrap_err();
    assert!(matches!(err, Error::Parse { at: Location::Line(1), .. }), "{err}");
    assert!(parse_matrix_csv::<f64, _>("".as_bytes()).is_err());
    assert!(read_matrix_csv::<f64>("/definitely/not/here.csv").is_err());
}

#[test]
fn triplet_round_trip_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.triplets");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let m =
        Matrix::from_fn(30, 17, |_, _| if rng.random_bool(0.1) { rng.random_range(-5.0..5.0) } else { 0.0 }).unwrap();
    write_sparse_triplets(&m, &path).unwrap();
    assert_eq!(read_sparse_triplets::<f64>(&path).unwrap(), m);

    let dense = parse_sparse_triplets::<f64>("2 2\n0 0 1.5\n").unwrap().to_dense().unwrap();
    assert_eq!(dense, Matrix::from_rows(&[[1.5, 0.0], [0.0, 0.0]]).unwrap());
    let empty = parse_sparse_triplets::<f64>("3 4\n").unwrap().to_dense().unwrap();
    assert_eq!(empty, Matrix::zeros(3, 4).unwrap());

    let err = parse_sparse_triplets::<f64>("2 2\n0 1 1\n1 1 2\n0 1 3\n").unwrap_err();
    assert!(matches!(err, Error::Parse { at: Location::Line(4), .. }), "{err}");
    let err = parse_sparse_triplets::<f64>("2 2\n2 0 1\n").unwrap_err();
    assert!(matches!(err, Error::Parse { at: Location::Line(2), .. }), "{err}");
}

#[test]
fn raw_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.bin");
    let m = generate(&GenSpec::coherent(33, 21, 4)).unwrap();
    write_matrix_raw(&m, &path).unwrap();
    assert_eq!(read_matrix_raw(&path).unwrap(), m);
    let mut bytes = encode_matrix_raw(&m);
    bytes.truncate(bytes.len() - 3);
    assert!(decode_matrix_raw(&bytes).is_err());
}
