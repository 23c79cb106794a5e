#![no_main]

use libfuzzer_sys::fuzz_target;
use multifrac::config::SceneConfig;

// Scene configs are the untrusted input surface of the CLI. Anything
// that parses must also survive the derived accessors and system
// construction without panicking.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(cfg) = SceneConfig::from_json(text) else {
        return;
    };
    let _ = cfg.beta_values();
    let _ = cfg.q_values();
    let _ = cfg.schedule();
    let _ = cfg.seed();
    if let Ok(ifs) = cfg.ifs.build() {
        if let Ok(psi) = cfg.potential_for(&ifs) {
            let _ = psi.value_depth();
        }
    }
    if let Some(g) = &cfg.ifs_g {
        let _ = g.build();
    }
});
