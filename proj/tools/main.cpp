#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "gwmlp/error.hpp"
#include "gwmlp/pipeline.hpp"

namespace {

// Exit codes: 1 config/model error, 2 data error, 3 numeric error.
int run(const std::function<void()>& body) {
  try {
    body();
    return 0;
  } catch (const gwmlp::DataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const gwmlp::NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groundwater-level forecasting with an MLP trained by Adam"};
  app.require_subcommand(1);

  std::string config_path;
  std::string model_path;
  std::string out_path;
  std::size_t horizon = 1;

  auto* train = app.add_subcommand(
      "train", "Train a model from CSV inputs and write model + report");
  train->add_option("--config", config_path, "Run configuration file")->required();

  auto* evaluate = app.add_subcommand(
      "evaluate", "Evaluate a stored model against the configured data");
  evaluate->add_option("--config", config_path, "Run configuration file")->required();
  evaluate->add_option("--model", model_path, "Model file")->required();
  evaluate->add_option("--out", out_path, "Report CSV path (default: report_out)");

  auto* predict = app.add_subcommand(
      "predict", "Recursive multi-month forecast using supplied future climate");
  predict->add_option("--config", config_path, "Run configuration file")->required();
  predict->add_option("--model", model_path, "Model file")->required();
  predict->add_option("--horizon", horizon, "Months to predict")->required();
  predict->add_option("--out", out_path, "Predictions CSV path")->required();

  auto* export_plot = app.add_subcommand(
      "export-plot", "Write observed vs predicted series for plotting");
  export_plot->add_option("--config", config_path, "Run configuration file")->required();
  export_plot->add_option("--model", model_path, "Model file")->required();
  export_plot->add_option("--out", out_path, "Plot CSV path (default: plot_out)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (train->parsed()) {
    return run([&] {
      const gwmlp::RunConfig cfg = gwmlp::parse_run_config(config_path);
      gwmlp::run_train(cfg, std::cout);
    });
  }
  if (evaluate->parsed()) {
    return run([&] {
      const gwmlp::RunConfig cfg = gwmlp::parse_run_config(config_path);
      const std::string report = out_path.empty() ? cfg.report_out : out_path;
      gwmlp::run_evaluate(cfg, model_path, report, std::cout);
    });
  }
  if (predict->parsed()) {
    return run([&] {
      const gwmlp::RunConfig cfg = gwmlp::parse_run_config(config_path);
      gwmlp::run_predict(cfg, model_path, horizon, out_path);
      std::cout << "wrote " << out_path << '\n';
    });
  }
  if (export_plot->parsed()) {
    return run([&] {
      const gwmlp::RunConfig cfg = gwmlp::parse_run_config(config_path);
      const std::string plot = out_path.empty() ? cfg.plot_out : out_path;
      gwmlp::run_export_plot(cfg, model_path, plot);
      std::cout << "wrote " << plot << '\n';
    });
  }
  return 1;
}
