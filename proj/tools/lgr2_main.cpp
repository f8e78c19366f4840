#include "lgr2/runner.hpp"

int main(int argc, char** argv) { return lgr2::run_cli(argc, argv); }
