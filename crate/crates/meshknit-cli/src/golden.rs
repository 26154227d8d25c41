//! Golden files compiled into the binary, so `reproduce` works from any directory.

const FILES: [(&str, &str); 7] = [
    ("fig4-a7.json", include_str!("../golden/fig4-a7.json")),
    ("fig4-a7.dot.sha256", include_str!("../golden/fig4-a7.dot.sha256")),
    ("d4-census.jsonl", include_str!("../golden/d4-census.jsonl")),
    ("d3m-cartan.json", include_str!("../golden/d3m-cartan.json")),
    ("d3m-a0.json", include_str!("../golden/d3m-a0.json")),
    ("d3m-a1.dot.sha256", include_str!("../golden/d3m-a1.dot.sha256")),
    ("brauer-roundtrip.json", include_str!("../golden/brauer-roundtrip.json")),
];

pub fn lookup(file: &str) -> Option<String> {
    FILES.iter().find(|(name, _)| *name == file).map(|(_, text)| text.to_string())
}
