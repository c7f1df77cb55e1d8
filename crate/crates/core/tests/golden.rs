use permpat::enumerate::{truncated_triangle, SearchConfig};
use permpat::Perm;

fn golden(name: &str) -> Vec<(usize, usize, u128)> {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(path).unwrap();
    text.lines()
        .skip(1)
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap())
        })
        .collect()
}

fn check(pattern: &str, file: &str) {
    let rows = golden(file);
    let n_max = rows.iter().map(|r| r.0).max().unwrap();
    let k_max = rows.iter().map(|r| r.1).max().unwrap();
    let t = truncated_triangle(&pattern.parse::<Perm>().unwrap(), n_max, k_max, &SearchConfig::default()).unwrap();
    for (n, k, count) in rows {
        assert_eq!(t[n - 1][k], count, "{pattern}: n={n} k={k}");
    }
}

#[test]
fn triangle_132() {
    check("132", "inv_triangle_132.csv");
}

#[test]
fn triangle_1324() {
    check("1324", "inv_triangle_1324.csv");
}
