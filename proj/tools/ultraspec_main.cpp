#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ultraspec/io.hpp"

using ultraspec::Json;

namespace {

int write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open '" << path << "' for writing\n";
        return 2;
    }
    out << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectra of constant-coefficient differential modules on the "
                 "ultrametric line"};
    std::string config_path;
    std::string out_path;
    std::string render = "none";
    std::vector<std::string> probes;
    long grid = 0;
    app.add_option("--config", config_path, "run configuration (JSON)")
        ->required()
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "write the result document here instead of stdout");
    app.add_option("--render", render, "also produce a rendering")
        ->check(CLI::IsMember({"ascii", "svg", "none"}));
    app.add_option("--probe", probes, "oracle: override the probe list")->delimiter(',');
    app.add_option("--grid", grid, "vary: resample the segment at this many even steps")
        ->check(CLI::NonNegativeNumber);
    CLI11_PARSE(app, argc, argv);

    std::ifstream in(config_path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();

    Json config;
    try {
        config = Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        std::cerr << "error: config parse: " << e.what() << "\n";
        return 2;
    }

    ultraspec::RunOptions options;
    options.render = render;
    options.probe_override = probes;
    options.grid_override = grid;
    ultraspec::RunResult result = ultraspec::run(config, options);

    std::string document = result.document.dump(2) + "\n";
    if (!out_path.empty()) {
        if (int rc = write_text(out_path, document)) return rc;
        if (!result.rendering.empty()) {
            std::string ext = render == "svg" ? ".render.svg" : ".render.txt";
            if (int rc = write_text(out_path + ext, result.rendering)) return rc;
        }
    } else {
        std::cout << document;
        if (!result.rendering.empty()) std::cout << "\n" << result.rendering;
    }
    if (result.exit_code != 0)
        std::cerr << "error: " << result.document["error"]["message"].get<std::string>() << "\n";
    return result.exit_code;
}
