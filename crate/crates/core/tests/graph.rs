use curve_milnor::frontend::{analyze, annotated_graph, parse_curve, Flags};
use curve_milnor::graph::{gcd_edge_data, serialize, Format, ResolutionGraph, Successor};
use curve_milnor::toric::ResolveConfig;

const SUITE: [&str; 8] = [
    "y^2 + x^3",
    "y^4 - 2x^3y^2 - x^5y + x^6",
    "(y^2 - x^3)^2 + x^7",
    "(y + x)(y^2 + x^3)",
    "(y^2 + x^3)^2",
    "x y (y - x)",
    "(y^3 + x^4)(y^2 - 2x^3)",
    "y^2 + x^2 y + x^5",
];

fn graph(text: &str) -> ResolutionGraph {
    annotated_graph(&parse_curve(text).unwrap(), &ResolveConfig::default()).unwrap()
}

#[test]
fn formula_multiplicities_match_pullback_orders() {
    for text in SUITE {
        let g = graph(text);
        for b in &g.bamboos {
            for v in &b.vertices {
                assert_eq!(v.multiplicity, Some(v.direct_order), "{text} bamboo {}", b.id);
            }
            assert_eq!(
                b.q_right_multiplicity,
                Some(b.direct_q_right),
                "{text} bamboo {} Qright",
                b.id
            );
            if let Some(m) = b.q_left_multiplicity {
                assert_eq!(m, b.direct_q_left, "{text} bamboo {} Qleft", b.id);
            }
        }
    }
}

#[test]
fn gcd_identity_on_suite() {
    for text in SUITE {
        for e in gcd_edge_data(&graph(text)) {
            assert!(e.holds, "{text}: {e:?}");
            assert_eq!(e.gcd_cluster, e.gcd_first_ray, "{text}");
        }
    }
}

#[test]
fn gcd_examples() {
    assert!(gcd_edge_data(&graph("y^2 + x^3")).is_empty());
    for text in ["(y^2 - x^3)^2 + x^7", "y^4 - 2x^3y^2 - x^5y + x^6"] {
        let edges = gcd_edge_data(&graph(text));
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].vertex_multiplicity, 12);
        assert_eq!(edges[0].bamboo_gcd, 2);
        assert_eq!(edges[0].gcd_cluster, 2);
    }
}

#[test]
fn vertex_degree_bookkeeping() {
    for text in SUITE {
        let g = graph(text);
        for (k, b) in g.bamboos.iter().enumerate() {
            let last = b.vertices.len() - 1;
            for (i, v) in b.vertices.iter().enumerate() {
                let left = i > 0 || b.q_left_multiplicity.is_some() || b.parent.is_some();
                let right = i < last || b.q_right_multiplicity.is_some();
                let attached: u64 = v.clusters.iter().map(|c| c.degree).sum();
                assert_eq!(
                    v.graph_degree(),
                    left as u64 + right as u64 + attached,
                    "{text} B{}",
                    b.id
                );
                let children = g.children(k).filter(|&(vi, _, _)| vi == i).count();
                let bamboo_clusters = v
                    .clusters
                    .iter()
                    .filter(|c| matches!(c.successor, Successor::Bamboo(_)))
                    .count();
                assert_eq!(children, bamboo_clusters);
            }
        }
    }
}

#[test]
fn dot_shapes() {
    let cusp = serialize(&graph("y^2 + x^3"), Format::Dot);
    assert_eq!(cusp.matches("[label=").count(), 3);
    assert_eq!(cusp.matches(" -- ").count(), 2);
    assert!(cusp.contains("B1 P=(2,3) m=6 r=1"));

    let two = serialize(&graph("y^4 - 2x^3y^2 - x^5y + x^6"), Format::Dot);
    assert_eq!(two.matches("[label=").count(), 5);
    assert_eq!(two.matches(" -- ").count(), 4);
    assert!(two.contains("\"B1:P1\" -- \"B1.1.1:P1\""));
    assert!(two.contains("B1.1.1 P=(2,1) m=26 r=1"));
}

#[test]
fn serialization_is_deterministic() {
    for text in SUITE {
        let flags = Flags {
            verify_jacobian: true,
            ..Flags::default()
        };
        let a = analyze(text, &flags).unwrap().to_json();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| analyze(text, &flags).unwrap().to_json());
        assert_eq!(a, b, "{text}");
        assert_eq!(
            serialize(&graph(text), Format::Dot),
            serialize(&graph(text), Format::Dot)
        );
        assert_eq!(
            serialize(&graph(text), Format::Json),
            serialize(&graph(text), Format::Json)
        );
    }
}

#[test]
fn json_schema_fields() {
    let r = analyze("(y^2 - x^3)^2 + x^7", &Flags::default()).unwrap();
    let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(v["schema"], "curve-milnor/1");
    assert_eq!(v["milnor_number"], 17);
    let floor2 = &v["graph"]["bamboos"][1];
    let cluster = &floor2["vertices"][0]["clusters"][0];
    assert_eq!(cluster["conjugacy_degree"], 2);
    assert_eq!(
        cluster["xi_polynomial"]["coefficients"],
        serde_json::json!(["1", "0", "1"])
    );
    assert_eq!(v["graph"]["gcd_edges"][0]["bamboo_gcd"], 2);
    assert!(r.to_json().starts_with("{\n  \"schema\": \"curve-milnor/1\""));
}
