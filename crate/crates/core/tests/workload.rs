use kernel_ladder::gol::ByteGrid;
use kernel_ladder::histogram::{histogram_reference, CharRange};
use kernel_ladder::workload::io::{self, GRID_MAGIC};
use kernel_ladder::workload::{
    gen_grid, gen_lorem, gen_points, gen_text, to_hexdump, GridSpec, KnnSpec, TextSource, TextSpec,
    Workload, WorkloadSpec,
};
use kernel_ladder::{Error, FormatError};
use sha2::{Digest, Sha256};

fn sha256(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// SplitMix64-seeded xoshiro256++, written from the published reference code.
struct Xoshiro([u64; 4]);

impl Xoshiro {
    fn new(seed: u64) -> Self {
        let mut x = seed;
        let mut s = [0; 4];
        for slot in &mut s {
            x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
            let mut z = x;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
            *slot = z ^ (z >> 31);
        }
        Xoshiro(s)
    }

    fn next(&mut self) -> u64 {
        let s = &mut self.0;
        let out = s[0].wrapping_add(s[3]).rotate_left(23).wrapping_add(s[0]);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        out
    }

    fn unit(&mut self) -> f64 {
        (self.next() >> 11) as f64 / 9_007_199_254_740_992.0
    }
}

#[test]
fn grid_matches_independent_generator() {
    let g = gen_grid(77, 128, 40, 0.37).unwrap();
    let mut rng = Xoshiro::new(77);
    for y in 0..40 {
        for x in 0..128 {
            assert_eq!(g.get(y, x), rng.unit() < 0.37, "({x},{y})");
        }
    }
}

#[test]
fn points_match_independent_generator() {
    let cloud = gen_points(78, 500, -3.0, 5.0).unwrap();
    let mut rng = Xoshiro::new(78);
    for p in cloud.points() {
        assert_eq!(p.x, -3.0 + 8.0 * rng.unit());
        assert_eq!(p.y, -3.0 + 8.0 * rng.unit());
    }
}

#[test]
fn golden_digests() {
    assert_eq!(
        sha256(&gen_lorem(1, 4096)),
        "361d0d585534549704799575d888cb60d116f6ebac033c307abd85d29682a9ac"
    );
    assert_eq!(
        sha256(&gen_text(2, 4096, TextSource::Hexdump)),
        "9f3ed3f0f7959650e6e42c0563e25ebcb9d6aca493c5419af38d24d9c6e1db21"
    );
    let grid = gen_grid(3, 128, 64, 0.3).unwrap();
    assert_eq!(
        sha256(&io::encode_grid(&grid).unwrap()),
        "630f06ace7b033dd60e43871f75e79fa00e632efc0684d2bb23f5b5c3698e744"
    );
    let points = gen_points(4, 1000, -1.0, 1.0).unwrap();
    assert_eq!(
        sha256(&io::encode_points(&points)),
        "398fd7e05d7623a6be1b3974aae5b736e163b457b430f1ee0dea33f41ec79383"
    );
}

#[test]
fn lorem_shape() {
    assert!(gen_lorem(9, 0).is_empty());
    let text = gen_lorem(9, 1_000_000);
    assert_eq!(text.len(), 1_000_000);
    assert_eq!(text, gen_lorem(9, 1_000_000));
    assert_ne!(text, gen_lorem(10, 1_000_000));
    let h = histogram_reference(&text, CharRange::PRINTABLE);
    for b in 32..=127u8 {
        if !(b.is_ascii_alphabetic() || b == b' ' || b == b'.') {
            assert_eq!(h.count(b), 0, "byte {b}");
        }
    }
    let body = &text[..text.len() - 200];
    for line in body.split(|&b| b == b'\n') {
        assert!(line.len() <= 80);
        for word in line.split(|&b| b == b' ') {
            let letters = word.iter().filter(|b| b.is_ascii_alphabetic()).count();
            assert!(
                (2..=12).contains(&letters),
                "{:?}",
                String::from_utf8_lossy(word)
            );
        }
    }
    // Every sentence begins with a capital.
    for sentence in body.split(|&b| b == b'.').skip(1).take(1000) {
        let first = sentence.iter().find(|b| b.is_ascii_alphabetic()).unwrap();
        assert!(first.is_ascii_uppercase());
    }
}

#[test]
fn hexdump_format() {
    assert_eq!(to_hexdump(b"A"), b"41");
    let line = to_hexdump(b"0123456789abcdef");
    assert_eq!(line.len(), 16 * 2 + 15 + 1);
    assert_eq!(line.iter().filter(|&&b| b == b' ').count(), 15);
    assert_eq!(line.last(), Some(&b'\n'));
    let dump = gen_text(5, 1 << 20, TextSource::Hexdump);
    assert_eq!(dump.len(), 1 << 20);
    assert!(dump
        .iter()
        .all(|&b| matches!(b, b'0'..=b'9' | b'a'..=b'f' | b' ' | b'\n')));
}

#[test]
fn grid_density() {
    let zero = gen_grid(1, 64, 8, 0.0).unwrap();
    assert_eq!(zero.population(), 0);
    let one = gen_grid(1, 64, 8, 1.0).unwrap();
    assert_eq!(one.population(), 512);
    let half = gen_grid(2, 4096, 4096, 0.5).unwrap();
    let frac = half.population() as f64 / (4096.0 * 4096.0);
    assert!((frac - 0.5).abs() <= 0.01, "{frac}");
    assert!(gen_grid(1, 100, 8, 0.5).is_err());
    assert!(gen_grid(1, 64, 0, 0.5).is_err());
    assert!(gen_grid(1, 64, 8, 1.5).is_err());
}

#[test]
fn point_statistics() {
    let one = gen_points(1, 1, 2.0, 3.0).unwrap();
    let p = one.points()[0];
    assert!((2.0..3.0).contains(&p.x) && (2.0..3.0).contains(&p.y));
    let cloud = gen_points(2, 1_000_000, 10.0, 30.0).unwrap();
    assert_eq!(cloud, gen_points(2, 1_000_000, 10.0, 30.0).unwrap());
    let n = cloud.len() as f64;
    let mx = cloud.points().iter().map(|p| p.x).sum::<f64>() / n;
    let my = cloud.points().iter().map(|p| p.y).sum::<f64>() / n;
    assert!(
        (mx - 20.0).abs() <= 0.2 && (my - 20.0).abs() <= 0.2,
        "{mx} {my}"
    );
    assert!(cloud
        .points()
        .iter()
        .all(|p| p.x >= 10.0 && p.x < 30.0 && p.y >= 10.0 && p.y < 30.0));
}

#[test]
fn file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let grid = gen_grid(4, 192, 33, 0.4).unwrap();
    io::write_grid(dir.path().join("g.golb"), &grid).unwrap();
    assert_eq!(io::read_grid(dir.path().join("g.golb")).unwrap(), grid);
    let points = gen_points(5, 777, -1.0, 1.0).unwrap();
    io::write_points(dir.path().join("p.pts"), &points).unwrap();
    assert_eq!(io::read_points(dir.path().join("p.pts")).unwrap(), points);
    let text = gen_lorem(6, 12_345);
    io::write_text(dir.path().join("t.txt"), &text).unwrap();
    assert_eq!(io::read_text(dir.path().join("t.txt")).unwrap(), text);
}

#[test]
fn corrupt_files() {
    let grid = ByteGrid::dead(64, 2).unwrap();
    let mut bytes = io::encode_grid(&grid).unwrap();
    assert_eq!(&bytes[..4], GRID_MAGIC);
    let mut bad = bytes.clone();
    bad[..4].copy_from_slice(b"XXXX");
    let err = io::decode_grid(&bad).unwrap_err();
    assert!(matches!(err, FormatError::BadMagic { .. }));
    assert_eq!(err.offset(), 0);

    // Claim more rows than the payload holds.
    bytes[8..12].copy_from_slice(&100u32.to_le_bytes());
    assert!(matches!(
        io::decode_grid(&bytes),
        Err(FormatError::Truncated { .. })
    ));

    let mut pts = io::encode_points(&gen_points(1, 4, 0.0, 1.0).unwrap());
    pts[4..8].copy_from_slice(&1000u32.to_le_bytes());
    assert!(matches!(
        io::decode_points(&pts),
        Err(FormatError::Truncated { .. })
    ));
    assert!(matches!(
        io::decode_points(b"PTS"),
        Err(FormatError::Truncated { .. })
    ));
}

#[test]
fn spec_validation_and_generation() {
    let bad_grid = WorkloadSpec::Gol(GridSpec {
        seed: 1,
        width: 65,
        height: 8,
        density: 0.5,
        iterations: 1,
    });
    assert!(matches!(
        bad_grid.validate(),
        Err(Error::Parameter { name: "width", .. })
    ));
    let short = WorkloadSpec::Knn(KnnSpec {
        seed: 1,
        n: 10,
        m: 1,
        k: 32,
        lo: 0.0,
        hi: 1.0,
    });
    assert!(matches!(
        short.generate(),
        Err(Error::InsufficientData {
            needed: 32,
            available: 10
        })
    ));

    let repeated = WorkloadSpec::Histogram(TextSpec {
        seed: 3,
        bytes: 1000,
        source: TextSource::Lorem,
        repeat_unit: Some(100),
        range: CharRange::PRINTABLE,
    });
    let Workload::Text { text, .. } = repeated.generate().unwrap() else {
        panic!()
    };
    assert_eq!(text.len(), 1000);
    assert!(text.chunks(100).all(|c| c == &text[..100]));

    let json = serde_json::to_string(&repeated).unwrap();
    assert_eq!(
        serde_json::from_str::<WorkloadSpec>(&json).unwrap(),
        repeated
    );
}
