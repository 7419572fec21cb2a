use std::fs;
use std::path::Path;

use theta_kernel::data::{data_dir, root_lattice, ClassSet};
use theta_kernel::format::{read_json, BundledClassFile};
use theta_kernel::CliError;
use theta_kernel_core::bqf::class_representatives;
use theta_kernel_core::lattice::a_root_lattice;

fn bundled() -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[test]
fn bundled_classes_match_reduction() {
    for p in [23u64, 31, 47] {
        let set = ClassSet::load(p, &bundled()).unwrap();
        assert!(set.source.is_some(), "p = {p} should come from the data directory");
        let computed = class_representatives(-(p as i64)).unwrap();
        assert_eq!(set.forms.len(), computed.len());
        for (f, c) in set.forms.iter().zip(&computed) {
            assert_eq!(f.form, c.form);
            assert_eq!(f.gram, c.form.gram().unwrap());
            assert_eq!(f.gram.determinant(), p.into());
        }
        assert_eq!(set.forms[0].label, format!("S_{{{p},0}}"));
        assert_eq!(set.gl_representatives().len(), set.class_number().div_ceil(2));
    }
    let s47 = ClassSet::load(47, &bundled()).unwrap();
    let labels: Vec<_> = s47.gl_representatives().iter().map(|f| (f.label.clone(), f.form.a)).collect();
    assert_eq!(labels, [("S_{47,0}".to_owned(), 1), ("S_{47,1}".to_owned(), 2), ("S_{47,2}".to_owned(), 3)]);
}

#[test]
fn computed_labels_follow_the_bundled_convention() {
    let empty = tempfile::tempdir().unwrap();
    for p in [23u64, 31, 47] {
        let fresh = ClassSet::load(p, empty.path()).unwrap();
        let file = ClassSet::load(p, &bundled()).unwrap();
        assert!(fresh.source.is_none());
        assert_eq!(fresh.forms, file.forms);
    }
}

#[test]
fn bundled_root_lattices_verify() {
    for p in [3u64, 5, 7, 11] {
        let cert = root_lattice(p, &bundled()).unwrap();
        assert!(bundled().join(format!("lattices/A{}.json", p - 1)).exists());
        assert_eq!(cert.gram, a_root_lattice(p).unwrap().0);
        assert!(cert.fixed_point_free);
    }
}

#[test]
fn corrupted_data_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir_all(dir.path().join("classes")).unwrap();
    let mut file: BundledClassFile = read_json(&bundled().join("classes/disc-23.json")).unwrap();
    file.forms[1].abc = [2, 1, 4];
    fs::write(dir.path().join("classes/disc-23.json"), serde_json::to_vec(&file).unwrap()).unwrap();
    let err = ClassSet::load(23, dir.path()).unwrap_err();
    assert!(matches!(err, CliError::DataMismatch { .. }), "{err}");

    fs::create_dir_all(dir.path().join("lattices")).unwrap();
    let text = fs::read_to_string(bundled().join("lattices/A4.json")).unwrap();
    fs::write(dir.path().join("lattices/A4.json"), text.replace("\"order\": 5", "\"order\": 3")).unwrap();
    assert!(matches!(root_lattice(5, dir.path()), Err(CliError::DataMismatch { .. })));
}

#[test]
fn default_data_dir_is_the_crate_data() {
    if std::env::var_os("THETA_KERNEL_DATA").is_none() {
        assert_eq!(data_dir(), bundled());
    }
}
