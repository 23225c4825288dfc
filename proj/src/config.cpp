#include "uthl/config.hpp"
