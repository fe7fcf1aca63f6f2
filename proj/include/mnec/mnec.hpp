#pragma once

#include "field.hpp"
#include "matrix.hpp"
#include "matroid.hpp"
#include "network.hpp"
#include "io.hpp"
#include "verifier.hpp"
#include "matroidal.hpp"
#include "constructor.hpp"
#include "insufficiency.hpp"
#include "reproduce.hpp"
