#include "failscen/cli.hpp"

int main(int argc, char** argv) { return failscen::cli::run(argc, argv); }
