//! The committed C header must match what cbindgen generates from the
//! current source, so drift shows up here instead of in a consumer's build.
//! Run with JURISTAT_FFI_REGEN=1 to rewrite the committed copy.

use std::path::Path;

#[test]
fn committed_header_is_current() {
    let crate_dir = env!("CARGO_MANIFEST_DIR");
    let config = cbindgen::Config::from_file(Path::new(crate_dir).join("cbindgen.toml"))
        .expect("cbindgen.toml must parse");
    let bindings = cbindgen::Builder::new()
        .with_crate(crate_dir)
        .with_config(config)
        .generate()
        .expect("header generation failed");
    let mut buf = Vec::new();
    bindings.write(&mut buf);
    let generated = String::from_utf8(buf).unwrap();

    let header = Path::new(crate_dir).join("include/juristat.h");
    if std::env::var_os("JURISTAT_FFI_REGEN").is_some() {
        std::fs::create_dir_all(header.parent().unwrap()).unwrap();
        std::fs::write(&header, &generated).unwrap();
    }
    let committed = std::fs::read_to_string(&header).unwrap_or_default();
    assert_eq!(
        committed, generated,
        "include/juristat.h is stale; regenerate with JURISTAT_FFI_REGEN=1 cargo test -p juristat-ffi"
    );
}
