#![no_main]

use libfuzzer_sys::fuzz_target;
use multifrac::{Alphabet, PotentialSpec, Word};

// Byte layout: [table depth selector][probe depth][word length]
// [word symbols...][8-byte little-endian table entries...].
// Tables that pass validation must yield ordered, finite Birkhoff
// bounds at every probe depth.
fuzz_target!(|data: &[u8]| {
    if data.len() < 3 {
        return;
    }
    let m = usize::from(data[0] % 2) + 1;
    let probe = usize::from(data[1] % 10) + 1;
    let wlen = usize::from(data[2] % 8) + 1;
    let entries = 1usize << m;
    let need = 3 + wlen + 8 * entries;
    if data.len() < need {
        return;
    }
    let alphabet = Alphabet::new(2).unwrap();
    let syms: Vec<u8> = data[3..3 + wlen].iter().map(|b| b % 2 + 1).collect();
    let Ok(word) = Word::new(&alphabet, syms) else {
        return;
    };
    let mut table = Vec::with_capacity(entries);
    for k in 0..entries {
        let off = 3 + wlen + 8 * k;
        let mut raw = [0u8; 8];
        raw.copy_from_slice(&data[off..off + 8]);
        table.push(f64::from_le_bytes(raw));
    }
    let Ok(psi) = PotentialSpec::locally_constant(alphabet, m, table) else {
        return;
    };
    let Ok(bounds) = psi.cylinder_bounds(&word, probe) else {
        return;
    };
    assert!(
        bounds.lower.is_finite() && bounds.upper.is_finite(),
        "non-finite bounds from a finite table"
    );
    assert!(bounds.lower <= bounds.upper, "inverted bracket");
    assert!(bounds.certified, "locally constant tables are exact");
});
