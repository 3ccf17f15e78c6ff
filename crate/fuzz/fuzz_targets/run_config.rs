#![no_main]

use libfuzzer_sys::fuzz_target;

// A leading "#param k=v" line (a TOML comment, so seeds stay valid
// documents) is fed through the override path as well.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match text.split_once('\n') {
        Some((first, rest)) if first.starts_with("#param ") => {
            let param = first["#param ".len()..].to_string();
            let _ = pfa_cli::config::RunConfig::parse(rest, &[param]);
        }
        _ => {
            let _ = pfa_cli::config::RunConfig::parse(text, &[]);
        }
    }
});
