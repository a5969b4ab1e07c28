// SPDX-License-Identifier: Apache-2.0

//! The generated header must be valid C and C++ on its own.

use std::path::Path;
use std::process::Command;

fn check_with(compiler: &str, lang: &str) {
    let header = Path::new(env!("CARGO_MANIFEST_DIR")).join("include/mori.h");
    let text = std::fs::read_to_string(&header).expect("header generated by build.rs");
    for sym in [
        "mori_class_from_json",
        "mori_string_free",
        "mori_last_error",
        "MORI_STATUS_OK",
    ] {
        assert!(text.contains(sym), "missing {sym}");
    }
    let status = match Command::new(compiler)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-x", lang])
        .arg(&header)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("{compiler} not found; skipping compile check");
            return;
        }
    };
    assert!(status.success(), "{compiler} rejected the header");
}

#[test]
fn header_compiles_as_c() {
    check_with("cc", "c");
}

#[test]
fn header_compiles_as_cpp() {
    check_with("c++", "c++");
}
