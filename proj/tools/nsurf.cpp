// nsurf: command-line front end for the normal surface toolkit.
//
// Subcommands map one-to-one onto library pipelines; summaries are printed
// as line-oriented key=value pairs for scripting.  Exit codes: 0 for
// success / a true verdict, 1 for a false verdict, 2 for errors, 64 for
// usage problems.

#include "nst/abstract.hpp"
#include "nst/cone.hpp"
#include "nst/detect.hpp"
#include "nst/error.hpp"
#include "nst/gadgets.hpp"
#include "nst/normal.hpp"
#include "nst/triangulation.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace nst;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitError = 2;
constexpr int kExitUsage = 64;

struct Options {
    std::vector<std::string> positional;
    std::string output;
    long long budget = 100000000;
    int threads = 1;
    bool enumerate_all = false;
    bool admissible_only = false;
};

int usage() {
    std::cerr <<
        "usage: nsurf <command> [args] [options]\n"
        "\n"
        "commands:\n"
        "  build torus|pillow|node-gadget        write a construction\n"
        "  reduce sat <clauses>                  clause set -> abstract instance\n"
        "  reduce ham <graph>                    cubic graph -> triangulation + labels\n"
        "  detect splitting <tri>                polynomial-time splitting surface search\n"
        "  detect spanning <tri>                 connected spanning central surface search\n"
        "  enumerate rays <tri|instance>         extreme rays of the solution cone\n"
        "  solve abstract <instance>             decide an abstract instance\n"
        "  verify cert <tri> <vector>            check a spanning central certificate\n"
        "  skeleton <tri>                        edges, vertices, validity, orientability\n"
        "\n"
        "options:\n"
        "  --output <path>    where to write the produced artifact\n"
        "  --budget <nodes>   search node budget (default 100000000)\n"
        "  --threads <k>      worker threads for the spanning search\n"
        "  --enumerate-all    count every spanning central surface\n"
        "  --admissible-only  enumerate only quadrilateral-admissible rays\n";
    return kExitUsage;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        fail(Errc::IoError, "cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out)
        fail(Errc::IoError, "cannot write " + path);
    out << text;
}

int cmd_build(const Options& opt) {
    if (opt.positional.size() != 1)
        return usage();
    const std::string& what = opt.positional[0];
    Triangulation t(1);
    std::string path = opt.output;
    if (what == "torus") {
        t = triangular_solid_torus();
        if (path.empty())
            path = "torus.tri";
    } else if (what == "pillow") {
        t = triangular_pillow();
        if (path.empty())
            path = "pillow.tri";
    } else if (what == "node-gadget") {
        t = node_gadget().first;
        if (path.empty())
            path = "node-gadget.tri";
    } else {
        return usage();
    }
    write_file(path, to_text(t));
    std::cout << "command=build\nkind=" << what << "\ntetrahedra=" << t.size()
              << "\ngluings=" << t.gluings().size() << "\noutput=" << path << "\n";
    return kExitTrue;
}

int cmd_reduce(const Options& opt) {
    if (opt.positional.size() != 2)
        return usage();
    const std::string& what = opt.positional[0];
    if (what == "sat") {
        ClauseSet c = clauses_from_text(read_file(opt.positional[1]));
        AbstractInstance inst = reduce_sat(c);
        std::string path = opt.output.empty() ? "instance.anc" : opt.output;
        write_file(path, to_text(inst));
        std::cout << "command=reduce-sat\nclauses=" << c.size() << "\nblocks=" << inst.blocks
                  << "\nequations=" << inst.equations.size() << "\noutput=" << path << "\n";
        return kExitTrue;
    }
    if (what == "ham") {
        CubicGraph g = graph_from_text(read_file(opt.positional[1]));
        GraphReduction r = build_t_g(g);
        std::string path = opt.output.empty() ? "tg.tri" : opt.output;
        write_file(path, to_text(r.tri));
        write_file(path + ".labels", labels_to_text(r));
        std::cout << "command=reduce-ham\nnodes=" << g.nodes << "\narcs=" << g.arcs.size()
                  << "\ntetrahedra=" << r.tri.size() << "\noutput=" << path << "\nlabels=" << path
                  << ".labels\n";
        return kExitTrue;
    }
    return usage();
}

int cmd_detect(const Options& opt) {
    if (opt.positional.size() != 2)
        return usage();
    const std::string& what = opt.positional[0];
    Triangulation t = triangulation_from_text(read_file(opt.positional[1]));
    if (what == "splitting") {
        auto found = find_splitting_surface(t);
        std::cout << "command=detect-splitting\ntetrahedra=" << t.size()
                  << "\nverdict=" << (found ? "true" : "false") << "\n";
        if (found && !opt.output.empty()) {
            write_file(opt.output, to_text(*found));
            std::cout << "witness=" << opt.output << "\n";
        }
        return found ? kExitTrue : kExitFalse;
    }
    if (what == "spanning") {
        DetectOptions dopt;
        dopt.budget = opt.budget;
        dopt.threads = opt.threads;
        std::cout << "command=detect-spanning\ntetrahedra=" << t.size() << "\n";
        if (opt.enumerate_all) {
            std::vector<NormalVector> all = enumerate_spanning_central(t, dopt);
            int connected = 0;
            for (const NormalVector& x : all)
                if (surface_complex(t, x).connected)
                    ++connected;
            std::cout << "enumerated=" << all.size() << "\ncount=" << connected << "\n";
        }
        auto found = find_connected_spanning_central(t, dopt);
        std::cout << "verdict=" << (found ? "true" : "false") << "\n";
        if (found && !opt.output.empty()) {
            write_file(opt.output, to_text(*found));
            std::cout << "witness=" << opt.output << "\n";
        }
        return found ? kExitTrue : kExitFalse;
    }
    return usage();
}

int cmd_enumerate(const Options& opt) {
    if (opt.positional.size() != 2 || opt.positional[0] != "rays")
        return usage();
    std::string text = read_file(opt.positional[1]);
    std::istringstream sniff(text);
    std::string first;
    sniff >> first;

    ConeSystem sys;
    if (first == "tri") {
        Triangulation t = triangulation_from_text(text);
        sys = cone_from_matching(matching_system(t), true);
    } else if (first == "instance") {
        AbstractInstance inst = instance_from_text(text);
        sys.dim = 7 * inst.blocks;
        for (const AbstractEquation& eq : inst.equations) {
            std::vector<std::pair<int, int>> row{
                {eq.q.flat(), 1}, {eq.t.flat(), 1}, {eq.q2.flat(), -1}, {eq.t2.flat(), -1}};
            sys.rows.push_back(std::move(row));
        }
        sys.zero_fixed.push_back(inst.fixed_zero.flat());
        for (int b = 0; b < inst.blocks; ++b)
            sys.quad_pattern.push_back({7 * b, 7 * b + 1, 7 * b + 2});
    } else {
        fail(Errc::ParseError, "expected a triangulation or instance file");
    }
    sys.prune_quad_violations = opt.admissible_only;
    std::vector<Ray> rays = extreme_rays(sys);
    std::cout << "command=enumerate-rays\ndim=" << sys.dim << "\nrays=" << rays.size()
              << "\nadmissible_only=" << (opt.admissible_only ? "true" : "false") << "\n";
    if (!opt.output.empty()) {
        write_file(opt.output, rays_to_text(rays));
        std::cout << "output=" << opt.output << "\n";
    } else {
        std::cout << rays_to_text(rays);
    }
    return kExitTrue;
}

int cmd_solve(const Options& opt) {
    if (opt.positional.size() != 2 || opt.positional[0] != "abstract")
        return usage();
    AbstractInstance inst = instance_from_text(read_file(opt.positional[1]));
    DecideResult r = decide_instance(inst);
    std::cout << "command=solve-abstract\nblocks=" << inst.blocks
              << "\nverdict=" << (r.satisfiable ? "true" : "false") << "\n";
    if (r.witness && !opt.output.empty()) {
        write_file(opt.output, to_text(NormalVector(r.witness->coords)));
        std::cout << "witness=" << opt.output << "\n";
    }
    return r.satisfiable ? kExitTrue : kExitFalse;
}

int cmd_verify(const Options& opt) {
    if (opt.positional.size() != 3 || opt.positional[0] != "cert")
        return usage();
    Triangulation t = triangulation_from_text(read_file(opt.positional[1]));
    NormalVector x = normal_vector_from_text(read_file(opt.positional[2]));
    bool ok = static_cast<int>(x.coords.size()) == 7 * t.size() && verify_certificate(t, x);
    std::cout << "command=verify-cert\nverdict=" << (ok ? "valid" : "invalid") << "\n";
    return ok ? kExitTrue : kExitFalse;
}

int cmd_skeleton(const Options& opt) {
    if (opt.positional.size() != 1)
        return usage();
    Triangulation t = triangulation_from_text(read_file(opt.positional[0]));
    Skeleton s = compute_skeleton(t);
    std::cout << "command=skeleton\ntetrahedra=" << t.size() << "\nedges=" << s.edge_count
              << "\nvertices=" << s.vertex_count << "\ninternal_faces=" << s.internal_face_count
              << "\nboundary_faces=" << s.boundary_faces.size()
              << "\nvalid=" << (s.valid ? "true" : "false") << "\n";
    std::vector<int> degrees = s.edge_degree;
    std::sort(degrees.begin(), degrees.end());
    std::cout << "edge_degrees=";
    for (size_t i = 0; i < degrees.size(); ++i)
        std::cout << (i ? "," : "") << degrees[i];
    std::cout << "\n";
    if (is_connected(t))
        std::cout << "orientable=" << (is_orientable(t) ? "true" : "false") << "\n";
    std::cout << "manifold=" << (is_3manifold(t) ? "true" : "false") << "\n";
    return kExitTrue;
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty())
        return usage();

    std::string command = args[0];
    Options opt;
    for (size_t i = 1; i < args.size(); ++i) {
        const std::string& a = args[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= args.size()) {
                std::cerr << "missing value for " << a << "\n";
                std::exit(kExitUsage);
            }
            return args[++i];
        };
        if (a == "--output")
            opt.output = next();
        else if (a == "--budget")
            opt.budget = std::stoll(next());
        else if (a == "--threads")
            opt.threads = std::max(1, std::stoi(next()));
        else if (a == "--enumerate-all")
            opt.enumerate_all = true;
        else if (a == "--admissible-only")
            opt.admissible_only = true;
        else if (a.rfind("--", 0) == 0) {
            std::cerr << "unknown option " << a << "\n";
            return kExitUsage;
        } else {
            opt.positional.push_back(a);
        }
    }

    try {
        if (command == "build")
            return cmd_build(opt);
        if (command == "reduce")
            return cmd_reduce(opt);
        if (command == "detect")
            return cmd_detect(opt);
        if (command == "enumerate")
            return cmd_enumerate(opt);
        if (command == "solve")
            return cmd_solve(opt);
        if (command == "verify")
            return cmd_verify(opt);
        if (command == "skeleton")
            return cmd_skeleton(opt);
        return usage();
    } catch (const Error& e) {
        std::cout << "error=" << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cout << "error=" << e.what() << "\n";
        return kExitError;
    }
}
