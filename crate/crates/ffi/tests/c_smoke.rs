//! Compile and run a small C program against the generated header and the
//! built shared library, proving the ABI end to end.

use std::path::PathBuf;
use std::process::Command;

const C_PROGRAM: &str = r#"
#include <subperm.h>
#include <stdio.h>
#include <string.h>

int main(void) {
    SpMatrix *x = NULL, *y = NULL, *h = NULL, *k = NULL;
    if (sp_matrix_parse("field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 1\n", &x) != SP_STATUS_OK)
        return 1;
    if (sp_canon(x, SP_CANON_ACTION_B_EQUIV, &y, &h, &k) != SP_STATUS_OK)
        return 2;
    char *printed = sp_matrix_print(y);
    if (!printed || strcmp(printed, "field GF(2)\nn 3\n0 0 1\n0 1 0\n1 0 0\n") != 0)
        return 3;
    sp_string_free(printed);

    bool related = true;
    uint32_t borel[3] = {1, 1, 1};
    SpMatrix *id = NULL;
    if (sp_matrix_parse("field GF(2)\nn 3\n1 0 0\n0 1 0\n0 0 1\n", &id) != SP_STATUS_OK)
        return 4;
    if (sp_p_equivalent(x, id, borel, 3, &related) != SP_STATUS_OK)
        return 5;
    if (related)
        return 6;

    char *count = sp_count_alt_orbits(4);
    if (!count || strcmp(count, "10") != 0)
        return 7;
    sp_string_free(count);

    sp_matrix_free(x);
    sp_matrix_free(y);
    sp_matrix_free(h);
    sp_matrix_free(k);
    sp_matrix_free(id);
    puts("c-abi-ok");
    return 0;
}
"#;

fn target_profile_dir() -> PathBuf {
    // The test binary lives in <target>/<profile>/deps/.
    let mut dir = std::env::current_exe().expect("test binary path");
    dir.pop();
    if dir.ends_with("deps") {
        dir.pop();
    }
    dir
}

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let include = manifest.join("include");
    let lib_dir = target_profile_dir();
    let so = lib_dir.join("libsubperm_ffi.so");
    assert!(so.exists(), "cdylib missing at {}", so.display());

    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    let exe = tmp.path().join("smoke");
    std::fs::write(&src, C_PROGRAM).unwrap();

    let compile = Command::new("cc")
        .arg(&src)
        .arg("-o")
        .arg(&exe)
        .arg(format!("-I{}", include.display()))
        .arg(format!("-L{}", lib_dir.display()))
        .arg(format!("-Wl,-rpath,{}", lib_dir.display()))
        .arg("-lsubperm_ffi")
        .output()
        .expect("cc is available");
    assert!(
        compile.status.success(),
        "cc failed: {}",
        String::from_utf8_lossy(&compile.stderr)
    );

    let run = Command::new(&exe).output().unwrap();
    assert_eq!(
        run.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&run.stderr)
    );
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "c-abi-ok");
}
