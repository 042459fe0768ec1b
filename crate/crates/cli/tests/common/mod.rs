#![allow(dead_code)]

use std::path::PathBuf;

pub fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture(name)).unwrap()
}

/// Runs the CLI in-process; fixture names are resolved when they exist.
pub fn cli(args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["cubefold".to_string()];
    for a in args {
        let p = fixture(a);
        argv.push(if std::path::Path::new(&p).is_file() { p } else { a.to_string() });
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cubefold::run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}
