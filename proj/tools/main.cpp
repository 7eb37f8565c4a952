#include "rabisim/cli.hpp"

int main(int argc, char** argv) {
    return rabi::cli::dispatch(argc, argv);
}
