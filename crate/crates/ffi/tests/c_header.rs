//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "adjoint_kit.h"

int main(int argc, char **argv) {
    FILE *fp = fopen(argv[1], "rb");
    if (!fp) return 10;
    static char text[1 << 16];
    size_t n = fread(text, 1, sizeof text - 1, fp);
    fclose(fp);
    text[n] = 0;

    AkScenario *s = NULL;
    if (ak_scenario_parse(text, &s) != AK_STATUS_OK) return 11;
    char *json = NULL;
    int32_t code = -1;
    if (ak_scenario_run_json(s, 0, &json, &code) != AK_STATUS_OK) return 12;
    if (code != 0 || strstr(json, "\"schema_version\"") == NULL) return 13;
    ak_string_free(json);
    ak_scenario_free(s);

    if (ak_scenario_parse("version 2\n", &s) != AK_STATUS_PARSE_ERROR) return 14;
    char *msg = ak_last_error_message();
    if (msg == NULL) return 15;
    ak_string_free(msg);

    const char *worlds[] = {"x", "y", "z"};
    AkLattice *l = NULL;
    if (ak_lattice_powerset(worlds, 3, &l) != AK_STATUS_OK) return 16;
    uintptr_t from[] = {1, 2, 4}, to[] = {1, 1, 4};
    AkMap *f = NULL, *fs = NULL;
    if (ak_map_from_generators(l, from, to, 3, &f) != AK_STATUS_OK) return 17;
    if (ak_map_right_adjoint(f, &fs) != AK_STATUS_OK) return 18;
    uintptr_t y = 0;
    ak_map_apply(fs, 1, &y);
    if (y != 3) return 19;
    ak_map_free(fs);
    ak_map_free(f);
    ak_lattice_free(l);
    puts("ok");
    return 0;
}
"#;

/// `target/<profile>`, found from the test binary in `target/<profile>/deps`.
fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libadjoint_kit_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg("-std=c11")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin)
        .arg(manifest.join("../core/scenarios/coin-honest.scn"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}
