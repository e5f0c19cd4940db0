use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use lie_chord_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { lc_string_free(s) };
    text
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(lc_last_error_message()) }.to_str().unwrap().to_string()
}

fn classical(family: &str, m: u32) -> *mut LcAlgebra {
    let f = CString::new(family).unwrap();
    let mut a = ptr::null_mut();
    assert_eq!(unsafe { lc_algebra_classical(f.as_ptr(), m, &mut a) }, LcStatus::Ok);
    a
}

#[test]
fn evaluate_through_the_abi() {
    let sl2 = classical("sl", 2);
    assert_eq!(unsafe { lc_algebra_dim(sl2) }, 3);
    let d = CString::new("1-3,2-4").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lc_eval_diagram(sl2, d.as_ptr(), &mut s) }, LcStatus::Ok);
    assert_eq!(take(s), "3/2");
    let mut x = 0.0;
    assert_eq!(unsafe { lc_eval_diagram_f64(sl2, d.as_ptr(), &mut x) }, LcStatus::Ok);
    assert!((x - 1.5).abs() < 1e-12);
    let mut yes = false;
    assert_eq!(unsafe { lc_algebra_is_semisimple(sl2, &mut yes) }, LcStatus::Ok);
    assert!(yes);
    unsafe { lc_algebra_free(sl2) };
}

#[test]
fn json_round_trip_and_sum() {
    let sl2 = classical("sl", 2);
    let mut json = ptr::null_mut();
    assert_eq!(unsafe { lc_algebra_to_json(sl2, &mut json) }, LcStatus::Ok);
    let json = CString::new(take(json)).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { lc_algebra_from_json(json.as_ptr(), &mut back) }, LcStatus::Ok);
    let mut sum = ptr::null_mut();
    assert_eq!(unsafe { lc_algebra_direct_sum(sl2, back, &mut sum) }, LcStatus::Ok);
    let so4 = classical("so", 4);

    let mut verdict = LcVerdict::Distinct;
    let mut witness = ptr::null_mut();
    assert_eq!(unsafe { lc_compare(sum, so4, 3, &mut verdict, &mut witness) }, LcStatus::Ok);
    assert_eq!(verdict, LcVerdict::EqualUpTo);
    assert!(witness.is_null());

    assert_eq!(unsafe { lc_compare(sl2, so4, 3, &mut verdict, &mut witness) }, LcStatus::Ok);
    assert_eq!(verdict, LcVerdict::Distinct);
    assert_eq!(take(witness), "1-2");
    for a in [sl2, back, sum, so4] {
        unsafe { lc_algebra_free(a) };
    }
}

#[test]
fn errors_carry_codes_and_messages() {
    let mut a = ptr::null_mut();
    let so = CString::new("so").unwrap();
    assert_eq!(unsafe { lc_algebra_classical(so.as_ptr(), 2, &mut a) }, LcStatus::NotSemisimple);
    assert!(a.is_null());
    assert!(!last_error().is_empty());

    let bad = CString::new("{not json").unwrap();
    assert_eq!(unsafe { lc_algebra_from_json(bad.as_ptr(), &mut a) }, LcStatus::MalformedInput);
    assert_eq!(unsafe { lc_algebra_from_json(ptr::null(), &mut a) }, LcStatus::NullPointer);

    let abelian = CString::new(r#"{"n":2,"mu":[]}"#).unwrap();
    assert_eq!(unsafe { lc_algebra_from_json(abelian.as_ptr(), &mut a) }, LcStatus::Ok);
    let mut yes = true;
    assert_eq!(unsafe { lc_algebra_is_semisimple(a, &mut yes) }, LcStatus::Ok);
    assert!(!yes);
    assert!(last_error().is_empty());
    let d = CString::new("1-2").unwrap();
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lc_eval_diagram(a, d.as_ptr(), &mut s) }, LcStatus::NotSemisimple);
    unsafe { lc_algebra_free(a) };

    let name = unsafe { CStr::from_ptr(lc_status_name(LcStatus::DimensionMismatch)) };
    assert_eq!(name.to_str().unwrap(), "dimension_mismatch");
    unsafe { lc_algebra_free(ptr::null_mut()) };
    unsafe { lc_string_free(ptr::null_mut()) };
}

#[test]
fn bound_and_reduction() {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { lc_theorem_bound(2, &mut s) }, LcStatus::Ok);
    assert_eq!(take(s), "10546875/2");
    assert_eq!(unsafe { lc_theorem_bound(0, &mut s) }, LcStatus::MalformedInput);

    // one chord drawn as a picture: two mu nodes joined by the circle, one theta
    let pic = CString::new(
        r#"{"mu_nodes":2,"theta_nodes":1,"edges":[
            [0,"out",1,"in2"],[1,"out",0,"in2"],
            [0,"p1",0,"in1"],[0,"p2",1,"in1"]]}"#,
    )
    .unwrap();
    let status = unsafe { lc_reduce_picture(pic.as_ptr(), &mut s) };
    if status != LcStatus::Ok {
        panic!("{status:?}: {}", last_error());
    }
    assert_eq!(take(s), "1 [1-2]\n");
}

/// Compiles a C program against the generated header and static library.
#[test]
fn c_program_links_against_header() {
    let Some(cc) = ["cc", "gcc", "clang"].into_iter().find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler found, skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header_dir = manifest.join("include");
    assert!(header_dir.join("lie_chord.h").exists());
    // target/<profile>/deps/abi-xxxx -> target/<profile>
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("liblie_chord_ffi.a");
    if !lib.exists() {
        eprintln!("{} not built, skipping", lib.display());
        return;
    }
    let out_dir = std::env::temp_dir().join(format!("lie-chord-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&out_dir).unwrap();
    let bin = out_dir.join("smoke");
    let status = Command::new(cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(&header_dir)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "3/2\ndistinct 1-2\nnot_semisimple\n");
}
