#include <pybind11/pybind11.h>
PYBIND11_MODULE(_qhj, m) { m.doc() = "stub"; }
