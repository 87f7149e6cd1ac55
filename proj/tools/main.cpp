#include "qmf/cli.hpp"

int main(int argc, char** argv) {
    return qmf::cli::run(argc, argv);
}
