#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use multifrac::{BranchMap, IfsSpec};

fn systems() -> &'static [IfsSpec; 3] {
    static SYSTEMS: OnceLock<[IfsSpec; 3]> = OnceLock::new();
    SYSTEMS.get_or_init(|| {
        let dyadic = IfsSpec::new(
            vec![
                BranchMap::affine(0.5, 0.0).unwrap(),
                BranchMap::affine(0.5, 0.5).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap();
        let cantor = IfsSpec::new(
            vec![
                BranchMap::affine(1.0 / 3.0, 0.0).unwrap(),
                BranchMap::affine(1.0 / 3.0, 2.0 / 3.0).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap();
        let moebius = IfsSpec::new(
            vec![
                BranchMap::moebius(1.0, 0.0, 1.0, 2.0).unwrap(),
                BranchMap::moebius(0.0, 2.0, -1.0, 3.0).unwrap(),
            ],
            Some((0.0, 1.0)),
            None,
        )
        .unwrap();
        [dyadic, cantor, moebius]
    })
}

// Decoding a point must hand back digits whose cylinder actually
// holds the point; dual codings may straddle a shared endpoint, so
// the containment check uses the hull over both.
fuzz_target!(|input: (u8, u8, f64)| {
    let (pick, depth_raw, x) = input;
    let spec = &systems()[usize::from(pick % 3)];
    let depth = usize::from(depth_raw % 40) + 1;
    let Ok(digits) = spec.digits_of_point(x, depth) else {
        return;
    };
    assert_eq!(digits.primary.len(), depth);
    let cyl = spec.cylinder_interval(&digits.primary);
    let mut lo = cyl.cert_lo();
    let mut hi = cyl.cert_hi();
    if let Some(second) = &digits.secondary {
        assert_eq!(second.len(), depth);
        let other = spec.cylinder_interval(second);
        lo = lo.min(other.cert_lo());
        hi = hi.max(other.cert_hi());
    }
    assert!(
        lo - 1e-9 <= x && x <= hi + 1e-9,
        "digits decode to [{lo}, {hi}] which misses x = {x}"
    );
});
