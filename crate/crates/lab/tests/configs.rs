use freeprod_lab::{lookup, ExperimentConfig, CATALOG};

#[test]
fn shipped_configs_cover_the_catalog() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/configs");
    let mut seen = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let text = std::fs::read_to_string(&path).unwrap();
        let c = ExperimentConfig::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert!(lookup(&c.experiment).is_some(), "{}", path.display());
        assert_eq!(path.file_stem().unwrap().to_str().unwrap(), c.experiment);
        seen.push(c.experiment);
    }
    seen.sort();
    let mut names: Vec<String> = CATALOG.iter().map(|e| e.name.to_string()).collect();
    names.sort();
    assert_eq!(seen, names);
}
