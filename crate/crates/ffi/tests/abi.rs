use std::ffi::{c_char, CStr, CString};
use std::ptr;

use scheme_forge_ffi::*;

fn last_error() -> String {
    let mut buf = [0 as c_char; 256];
    let mut needed = 0;
    unsafe {
        assert_eq!(sf_last_error(buf.as_mut_ptr(), buf.len(), &mut needed), SfStatus::SfOk);
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

fn read_string(f: impl Fn(*mut c_char, usize, *mut usize) -> SfStatus) -> String {
    let mut needed = 0;
    assert_eq!(f(ptr::null_mut(), 0, &mut needed), SfStatus::SfBufferTooSmall);
    let mut buf = vec![0 as c_char; needed];
    let mut again = 0;
    assert_eq!(f(buf.as_mut_ptr(), buf.len(), &mut again), SfStatus::SfOk);
    assert_eq!(again, needed);
    unsafe { CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned() }
}

fn omega(q: u64, n: u32) -> *mut SfOmega {
    let mut o = ptr::null_mut();
    assert_eq!(unsafe { sf_omega_new(q, n, &mut o) }, SfStatus::SfOk);
    o
}

#[test]
fn version_and_omega() {
    let v = unsafe { CStr::from_ptr(sf_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    let o = omega(8, 7);
    unsafe {
        assert_eq!(sf_omega_len(o), 63);
        assert_eq!(read_string(|b, c, n| sf_omega_modulus(o, b, c, n)), "x^3+x+1");
        sf_omega_free(o);
        assert_eq!(sf_omega_len(ptr::null()), 0);
    }
}

#[test]
fn bad_parameters_report_status_and_message() {
    let mut o = ptr::null_mut();
    unsafe {
        assert_eq!(sf_omega_new(12, 1, &mut o), SfStatus::SfInvalidArgument);
        assert!(o.is_null());
        assert!(last_error().contains("prime power"));
        assert_eq!(sf_omega_new(9, 7, &mut o), SfStatus::SfConstruction);
        assert!(last_error().contains("divide"));
        assert_eq!(sf_omega_new(8, 7, ptr::null_mut()), SfStatus::SfNullPointer);
    }
    let o = omega(8, 7);
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(sf_dsrg_build(o, 3, 0, &mut g), SfStatus::SfInvalidArgument);
        let bad = [1u32, 2, 3];
        assert_ne!(sf_ddg_build(o, bad.as_ptr(), 3, &mut g), SfStatus::SfOk);
        assert!(g.is_null());
        sf_omega_free(o);
    }
}

#[test]
fn dsrg_certificate_and_automorphisms() {
    let o = omega(8, 7);
    unsafe {
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(sf_dsrg_build(o, 1, 0, &mut a), SfStatus::SfOk);
        assert_eq!(sf_dsrg_build(o, 2, 0, &mut b), SfStatus::SfOk);
        assert_eq!(sf_graph_vertex_count(a), 63);
        assert_eq!(sf_graph_arc_count(a), 63 * 11);
        assert!(!sf_graph_has_arc(a, 0, 1000));
        let (mut ok, mut p) = (false, SfDsrgParams::default());
        assert_eq!(sf_graph_verify_dsrg(a, &mut ok, &mut p), SfStatus::SfOk);
        assert!(ok);
        assert_eq!((p.v, p.k, p.t, p.lambda, p.mu), (63, 11, 8, 1, 2));
        assert_eq!(read_string(|x, c, n| sf_graph_automorphism_order(a, x, c, n)), "1512");
        let mut iso = true;
        assert_eq!(sf_graph_isomorphic(a, b, &mut iso), SfStatus::SfOk);
        assert!(!iso);
        assert_eq!(sf_graph_isomorphic(a, a, &mut iso), SfStatus::SfOk);
        assert!(iso);
        assert_eq!(read_string(|x, c, n| sf_graph_canonical_hash(a, x, c, n)).len(), 64);
        sf_graph_free(a);
        sf_graph_free(b);
        sf_omega_free(o);
    }
}

#[test]
fn ddg_round_trip_through_graph6() {
    let o = omega(8, 7);
    unsafe {
        let ds = [1u32, 2, 4];
        let mut g = ptr::null_mut();
        assert_eq!(sf_ddg_build(o, ds.as_ptr(), ds.len(), &mut g), SfStatus::SfOk);
        let (mut ok, mut p) = (false, SfDdgParams::default());
        assert_eq!(sf_graph_verify_ddg(g, 0, &mut ok, &mut p), SfStatus::SfOk);
        assert!(ok && p.proper);
        assert_eq!((p.v, p.k, p.lambda1, p.lambda2, p.m, p.n), (63, 24, 8, 9, 9, 7));

        let text = read_string(|x, c, n| sf_graph_export(g, SfFormat::SfGraph6, x, c, n));
        let c = CString::new(text.clone()).unwrap();
        let mut h = ptr::null_mut();
        assert_eq!(sf_graph_import(c.as_ptr(), SfFormat::SfGraph6, &mut h), SfStatus::SfOk);
        assert_eq!(
            read_string(|x, c, n| sf_graph_export(h, SfFormat::SfGraph6, x, c, n)),
            text
        );
        assert_eq!(sf_graph_verify_ddg(h, 0, &mut ok, &mut p), SfStatus::SfInvalidArgument);
        assert_eq!(sf_graph_verify_ddg(h, 7, &mut ok, &mut p), SfStatus::SfOk);
        assert!(ok);
        assert_eq!(sf_graph_verify_ddg(h, 9, &mut ok, &mut p), SfStatus::SfOk);
        assert!(!ok);
        assert_eq!(sf_graph_verify_ddg(h, 10, &mut ok, &mut p), SfStatus::SfInvalidArgument);

        let d = read_string(|x, c, n| sf_graph_export(g, SfFormat::SfDigraph6, x, c, n));
        assert!(d.starts_with('&'));
        let junk = CString::new("not a graph").unwrap();
        let mut k = ptr::null_mut();
        assert_eq!(
            sf_graph_import(junk.as_ptr(), SfFormat::SfGraph6, &mut k),
            SfStatus::SfParse
        );
        sf_graph_free(g);
        sf_graph_free(h);
        sf_omega_free(o);
    }
}

#[test]
fn pair_count() {
    let mut count = 0;
    unsafe {
        assert_eq!(sf_search_count_pairs(1_000_000_000, true, &mut count), SfStatus::SfOk);
        assert_eq!(count, 328);
        assert_eq!(sf_search_count_pairs(100, false, &mut count), SfStatus::SfOk);
        assert_eq!(count, 2);
        assert_eq!(sf_search_count_pairs(u64::MAX, true, &mut count), SfStatus::SfTooLarge);
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/scheme_forge.h");
    assert!(header.exists());
    let src = std::env::temp_dir().join("scheme_forge_header_check.c");
    std::fs::write(
        &src,
        "#include \"scheme_forge.h\"\nint main(void) { SfOmega *o = 0; return sf_omega_new(8, 7, &o) == SF_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = match std::process::Command::new("cc")
        .args(["-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(dir.join("include"))
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler available; skipping");
            return;
        }
    };
    assert!(status.success());
}
