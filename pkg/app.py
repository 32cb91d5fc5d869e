import tempfile
from pathlib import Path

import streamlit as st

from src.algebra import parse_algebra_spec
from src.cli import RunConfig, cmd_chromatic, cmd_csf, cmd_homology, cmd_matching, cmd_nbc, cmd_verify
from src.config import MODELS, VERIFY_LEVELS, get_defaults, setup_logging
from src.corpus import NAMED_FILES, named_graph
from src.errors import ChromhomError
from src.graph import format_edge_list, parse_edge_list
from src.report import format_verify_summary, render

setup_logging()
defaults = get_defaults()

st.title("Chromatic Homology Explorer")

# Settings sidebar
with st.sidebar:
    st.header("Settings")

    algebra = st.text_input("Algebra", value=defaults["algebra"], help="am:<m> or path to a JSON algebra")
    model = st.selectbox("Model", MODELS, index=MODELS.index(defaults["model"]))
    verify_level = st.radio("Verification", VERIFY_LEVELS, index=VERIFY_LEVELS.index(defaults["verify"]))
    export_format = st.radio("Export format", ["json", "tsv"])

    st.divider()
    source = st.radio("Graph source", ["Corpus", "Edge list"])

# Graph input
if source == "Corpus":
    name = st.selectbox("Corpus graph", sorted(NAMED_FILES))
    graph_text = format_edge_list(named_graph(name))
    st.code(graph_text)
else:
    graph_text = st.text_area(
        "Edge list (first line 'n <vertices>', then one 'u v' per edge in order):",
        value="n 3\n0 1\n0 2\n1 2\n",
        height=200,
    )

if st.button("Compute"):
    try:
        g = parse_edge_list(graph_text)
        parse_algebra_spec(algebra)
    except ChromhomError as e:
        st.error(f"Error: {e}")
        st.stop()

    def run(command, handler, graph_path):
        cfg = RunConfig(
            command=command,
            graph=str(graph_path),
            algebra=algebra,
            model=model,
            verify=verify_level,
            timing=True,
        )
        return handler(cfg)

    # cli commands read graphs from disk or by name; the directory goes away afterwards
    with st.spinner("Building complexes and computing homology..."), tempfile.TemporaryDirectory() as workdir:
        graph_path = Path(workdir) / "graph.txt"
        graph_path.write_text(format_edge_list(g), encoding="utf-8")
        try:
            homology_report = run("homology", cmd_homology, graph_path)
            nbc_report = run("nbc", cmd_nbc, graph_path)
            matching_report = run("matching", cmd_matching, graph_path)
            chromatic_report = run("chromatic", cmd_chromatic, graph_path)
            csf_report = run("csf", cmd_csf, graph_path)
            verify_report = run("verify", cmd_verify, graph_path)
        except ChromhomError as e:
            st.error(f"Error: {e}")
            st.stop()

    st.success(
        f"{g.n_vertices} vertices, {g.n_edges} edges: "
        f"{nbc_report['nbc_count']} NBC states out of {nbc_report['full_count']}"
    )
    if not homology_report["ok"]:
        st.error("Full and NBC homology disagree")

    # Export button
    col1, col2 = st.columns([3, 1])
    with col2:
        bundle = {
            "homology": homology_report,
            "chromatic": chromatic_report,
            "csf": csf_report,
            "verify": verify_report,
        }
        st.download_button(
            label="📥 Export",
            data=render(bundle, export_format),
            file_name=f"chromhom.{export_format}",
            mime="application/json" if export_format == "json" else "text/tab-separated-values",
        )

    tab1, tab2, tab3, tab4, tab5 = st.tabs(["Homology", "NBC states", "Matching", "Chromatic", "Verify"])

    with tab1:
        for model_name, entry in homology_report["models"].items():
            st.markdown(f"### {model_name} complex ({entry['states']} states)")
            st.table(entry["groups"] or [{"group": "0"}])
            st.caption(f"Graded Euler characteristic: {entry['euler']}")
            st.caption(f"Poincare polynomial: {entry['poincare']}")
            if entry["torsion"]:
                st.caption("Torsion: " + ", ".join(f"({t['i']}, {t['j']}): {t['torsion']}" for t in entry["torsion"]))
            st.caption(
                f"Build {entry['build_seconds']:.4f}s, homology {entry['homology_seconds']:.4f}s"
            )
        if homology_report.get("diff"):
            st.table(homology_report["diff"])

    with tab2:
        st.table([{"edges": ",".join(map(str, row["edges"])), "size": row["size"]} for row in nbc_report["nbc"]])

    with tab3:
        st.markdown(f"{len(matching_report['pairs'])} matched pairs cover {matching_report['bc_count']} BC states")
        st.table([
            {"lower": str(p["lower"]), "upper": str(p["upper"]), "edge": p["edge"]}
            for p in matching_report["pairs"]
        ])

    with tab4:
        st.markdown(f"**Chromatic polynomial:** {chromatic_report['polynomial']}")
        st.json(chromatic_report["coefficients"])
        st.markdown("**Chromatic symmetric function (power sums)**")
        st.json(csf_report["nbc"])

    with tab5:
        st.text_area("Properties", value=format_verify_summary(verify_report), height=400)
        if not verify_report["ok"]:
            st.error("Some properties failed; see the FAIL lines above")
