//! Compiles and runs a small C program against the generated header and the
//! static library. Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "relieve.h"

int main(void) {
    RelieveDataset *d = NULL;
    RelieveTruth *t = NULL;
    if (relieve_gen_corral(0, 0, &d, &t) != RELIEVE_STATUS_OK) return 1;
    RelieveWeighOptions opts = relieve_weigh_options_default();
    RelieveWeights *w = NULL;
    if (relieve_weigh(d, "pdrelieff", &opts, &w) != RELIEVE_STATUS_OK) return 2;
    RelieveCriteria c;
    if (relieve_criteria(w, t, &c) != RELIEVE_STATUS_OK) return 3;
    if (relieve_weigh(d, "bogus", NULL, &w) != RELIEVE_STATUS_USAGE) return 4;
    char *msg = relieve_last_error();
    if (msg == NULL || strstr(msg, "bogus") == NULL) return 5;
    relieve_string_free(msg);
    printf("%zu %s\n", relieve_weights_len(w), relieve_version());
    relieve_weights_free(w);
    relieve_truth_free(t);
    relieve_dataset_free(d);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // tests/<name>-<hash> lives in target/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok()?.status.success().then_some(cc)
}

#[test]
fn c_program_links_and_runs() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler; skipping");
        return;
    };
    let lib = target_dir().join("librelieve_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("smoke.c");
    let exe = tmp.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();

    let status = Command::new(&cc)
        .arg(&src)
        .arg("-I")
        .arg(&include)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compile failed");

    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "smoke exited with {:?}", out.status.code());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.trim(), format!("6 {}", env!("CARGO_PKG_VERSION")));
}
