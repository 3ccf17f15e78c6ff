//! Replays the checked-in fuzz seeds for the config and curve parsers:
//! `ok-*` must parse, `err-*` must be rejected, nothing may panic.

use std::fs;
use std::path::PathBuf;

use pfa_cli::config::RunConfig;
use pfa_cli::curve::curves_from_json;

fn corpus(name: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(name);
    let mut paths: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| entry.unwrap().path())
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let text =
                fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()));
            (name, text)
        })
        .collect()
}

/// Mirrors the fuzz harness: a leading `#param k=v` comment line is fed
/// through the override path, the remainder is the config text.
fn parse_config_seed(text: &str) -> casimir_pfa::Result<RunConfig> {
    match text.split_once('\n') {
        Some((first, rest)) if first.starts_with("#param ") => {
            RunConfig::parse(rest, &[first["#param ".len()..].to_string()])
        }
        _ => RunConfig::parse(text, &[]),
    }
}

#[test]
fn run_config_seeds_behave_as_named() {
    let seeds = corpus("run_config");
    assert!(seeds.len() >= 8, "corpus went missing");
    for (name, text) in seeds {
        let parsed = parse_config_seed(&text);
        if name.starts_with("ok-") {
            assert!(parsed.is_ok(), "{name}: {:?}", parsed.err());
        } else if name.starts_with("err-") {
            assert!(parsed.is_err(), "{name}: parsed unexpectedly");
        }
    }
}

#[test]
fn curve_json_seeds_behave_as_named() {
    let seeds = corpus("curve_json");
    assert!(seeds.len() >= 6, "corpus went missing");
    for (name, text) in seeds {
        let parsed = curves_from_json(&text);
        if name.starts_with("ok-") {
            assert!(parsed.is_ok(), "{name}: {:?}", parsed.err());
        } else if name.starts_with("err-") {
            assert!(parsed.is_err(), "{name}: parsed unexpectedly");
        }
    }
}
