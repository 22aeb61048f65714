use semicat::fixtures::{catalogue, dir};
use semicat::io::{self, EXTENSION};

#[test]
fn fixtures_are_canonical_renderings() {
    let bless = std::env::var_os("SEMICAT_BLESS").is_some();
    if bless {
        std::fs::create_dir_all(dir()).unwrap();
    }
    for (stem, doc) in catalogue() {
        let path = dir().join(format!("{stem}{EXTENSION}"));
        let text = io::render(&doc);
        if bless {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{stem} is stale; rerun with SEMICAT_BLESS=1");
        let parsed = io::read_document(path.to_str().unwrap()).unwrap();
        assert_eq!(parsed, doc, "{stem}");
        assert_eq!(io::render(&parsed), on_disk, "{stem}");
    }
}

#[test]
fn every_fixture_file_is_catalogued() {
    let known: Vec<String> = catalogue().into_iter().map(|(s, _)| format!("{s}{EXTENSION}")).collect();
    for f in std::fs::read_dir(dir()).unwrap() {
        let name = f.unwrap().file_name().into_string().unwrap();
        assert!(known.contains(&name), "uncatalogued fixture {name}");
    }
}
