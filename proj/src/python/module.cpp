#include <gmpxx.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fleetmatch/adversary.hpp"
#include "fleetmatch/bignum.hpp"
#include "fleetmatch/matchmaking.hpp"
#include "fleetmatch/network.hpp"
#include "fleetmatch/paillier.hpp"
#include "fleetmatch/rng.hpp"

namespace py = pybind11;
using namespace fleetmatch;

namespace pybind11::detail {

/// mpz_class <-> python int, bridged through decimal strings so values of
/// any size survive the crossing.
template <>
struct type_caster<mpz_class> {
 public:
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    PyObject* as_str = PyObject_Str(src.ptr());
    if (!as_str) {
      PyErr_Clear();
      return false;
    }
    const char* digits = PyUnicode_AsUTF8(as_str);
    if (!digits) {
      Py_DECREF(as_str);
      PyErr_Clear();
      return false;
    }
    const int rc = mpz_set_str(value.get_mpz_t(), digits, 10);
    Py_DECREF(as_str);
    return rc == 0;
  }

  static handle cast(const mpz_class& src, return_value_policy, handle) {
    return PyLong_FromString(src.get_str().c_str(), nullptr, 10);
  }
};

}  // namespace pybind11::detail

namespace {

std::vector<std::uint8_t> to_vec(const py::bytes& b) {
  const std::string s = b;
  return std::vector<std::uint8_t>(s.begin(), s.end());
}

py::bytes to_bytes(const std::vector<std::uint8_t>& v) {
  return py::bytes(reinterpret_cast<const char*>(v.data()), v.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Privacy-preserving fleet match-making over Paillier ciphertexts";

  py::register_exception<paillier::CorruptCiphertextError>(
      m, "CorruptCiphertextError", PyExc_ValueError);
  py::register_exception<network::CoefficientWrapError>(
      m, "CoefficientWrapError", PyExc_RuntimeError);
  py::register_exception<adversary::BudgetError>(m, "BudgetError",
                                                 PyExc_RuntimeError);

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def_static("from_entropy", &Rng::from_entropy)
      .def("below", &Rng::below, py::arg("bound"))
      .def("between", &Rng::between, py::arg("lo"), py::arg("hi"));

  // --- paillier ----------------------------------------------------------
  py::class_<paillier::PublicKey>(m, "PublicKey")
      .def_readonly("n", &paillier::PublicKey::n)
      .def_readonly("n_squared", &paillier::PublicKey::n_squared)
      .def_readonly("key_bits", &paillier::PublicKey::key_bits);
  py::class_<paillier::PrivateKey>(m, "PrivateKey")
      .def_readonly("p", &paillier::PrivateKey::p)
      .def_readonly("q", &paillier::PrivateKey::q)
      .def_readonly("lambda_", &paillier::PrivateKey::lambda)
      .def_readonly("mu", &paillier::PrivateKey::mu);
  py::class_<paillier::KeyPair>(m, "KeyPair")
      .def_readonly("pub", &paillier::KeyPair::pub)
      .def_readonly("prv", &paillier::KeyPair::prv);
  py::class_<paillier::Ciphertext>(m, "Ciphertext")
      .def(py::init<Bignum>(), py::arg("value"))
      .def_readonly("value", &paillier::Ciphertext::value)
      .def("__eq__", [](const paillier::Ciphertext& a,
                        const paillier::Ciphertext& b) { return a == b; });

  m.def("generate_keys", &paillier::generate_keys, py::arg("key_bits"),
        py::arg("rng"));
  m.def("keypair_from_primes", &paillier::keypair_from_primes, py::arg("p"),
        py::arg("q"));
  m.def("sample_unit", &paillier::sample_unit, py::arg("pk"), py::arg("rng"));
  m.def(
      "encrypt",
      [](const paillier::PublicKey& pk, const Bignum& t, Rng& rng) {
        return paillier::encrypt(pk, t, rng);
      },
      py::arg("pk"), py::arg("t"), py::arg("rng"));
  m.def(
      "encrypt_with",
      [](const paillier::PublicKey& pk, const Bignum& t, const Bignum& r) {
        return paillier::encrypt(pk, t, r);
      },
      py::arg("pk"), py::arg("t"), py::arg("r"),
      "Deterministic encryption under an explicit unit randomizer");
  m.def("decrypt", &paillier::decrypt, py::arg("sk"), py::arg("pk"),
        py::arg("c"));
  m.def("add_cipher", &paillier::add_cipher, py::arg("pk"), py::arg("c1"),
        py::arg("c2"));
  m.def("scalar_mul", &paillier::scalar_mul, py::arg("pk"), py::arg("c"),
        py::arg("k"));

  // --- matchmaking -------------------------------------------------------
  py::class_<matchmaking::World>(m, "World")
      .def(py::init<int, int>(), py::arg("roads"), py::arg("slots"))
      .def_readonly("num_roads", &matchmaking::World::num_roads)
      .def_readonly("num_slots", &matchmaking::World::num_slots)
      .def("size", &matchmaking::World::size)
      .def("index_of", &matchmaking::World::index_of, py::arg("road"),
           py::arg("slot"))
      .def("road_slot", &matchmaking::World::road_slot, py::arg("w"));
  py::class_<matchmaking::InterestSet>(m, "InterestSet")
      .def(py::init<matchmaking::World, std::set<int>>(), py::arg("world"),
           py::arg("members"))
      .def_property_readonly("members", &matchmaking::InterestSet::members)
      .def("contains", &matchmaking::InterestSet::contains, py::arg("w"));
  py::class_<matchmaking::QueryVector>(m, "QueryVector")
      .def_readonly("pk", &matchmaking::QueryVector::pk)
      .def_readonly("entries", &matchmaking::QueryVector::entries);
  py::class_<matchmaking::Response>(m, "Response")
      .def(py::init([](const paillier::Ciphertext& y) {
             return matchmaking::Response{y};
           }),
           py::arg("y"))
      .def_readonly("y", &matchmaking::Response::y);

  m.def("submit_query", &matchmaking::submit_query, py::arg("pk"),
        py::arg("world"), py::arg("w"), py::arg("rng"));
  m.def(
      "return_response",
      [](const paillier::PublicKey& pk, const matchmaking::QueryVector& x,
         const matchmaking::InterestSet& interests, Rng& rng) {
        return matchmaking::return_response(pk, x, interests, rng);
      },
      py::arg("pk"), py::arg("x"), py::arg("interests"), py::arg("rng"));
  m.def("interpret", &matchmaking::interpret, py::arg("sk"), py::arg("pk"),
        py::arg("y"));
  m.def("ciphertext_field_bytes", &matchmaking::ciphertext_field_bytes,
        py::arg("pk"));
  m.def("query_message_bytes", &matchmaking::query_message_bytes,
        py::arg("q"));
  m.def("response_message_bytes", &matchmaking::response_message_bytes,
        py::arg("pk"));
  m.def(
      "encode_query",
      [](const matchmaking::QueryVector& q) {
        return to_bytes(matchmaking::encode_query(q));
      },
      py::arg("q"));
  m.def(
      "decode_query",
      [](const py::bytes& b, const paillier::PublicKey& pk) {
        return matchmaking::decode_query(to_vec(b), pk);
      },
      py::arg("data"), py::arg("pk"));
  m.def(
      "encode_response",
      [](const matchmaking::Response& r, const paillier::PublicKey& pk) {
        return to_bytes(matchmaking::encode_response(r, pk));
      },
      py::arg("r"), py::arg("pk"));
  m.def(
      "decode_response",
      [](const py::bytes& b, const paillier::PublicKey& pk) {
        return matchmaking::decode_response(to_vec(b), pk);
      },
      py::arg("data"), py::arg("pk"));

  // --- network -----------------------------------------------------------
  py::class_<network::CommGraph>(m, "CommGraph")
      .def(py::init<int>(), py::arg("num_vertices"))
      .def(py::init<std::set<int>>(), py::arg("vertices"))
      .def("add_edge", &network::CommGraph::add_edge, py::arg("u"),
           py::arg("v"))
      .def("has_vertex", &network::CommGraph::has_vertex, py::arg("v"))
      .def("has_edge", &network::CommGraph::has_edge, py::arg("u"),
           py::arg("v"))
      .def_property_readonly("vertices", &network::CommGraph::vertices)
      .def("neighbors", &network::CommGraph::neighbors, py::arg("v"))
      .def("num_edges", &network::CommGraph::num_edges);
  py::class_<network::LoopWalk>(m, "LoopWalk")
      .def_readonly("sequence", &network::LoopWalk::sequence)
      .def("enquirer", &network::LoopWalk::enquirer)
      .def("interior_positions", &network::LoopWalk::interior_positions);
  py::class_<network::DrawRecord>(m, "DrawRecord")
      .def_readonly("fleet", &network::DrawRecord::fleet)
      .def_readonly("index", &network::DrawRecord::index)
      .def_readonly("omega", &network::DrawRecord::omega);
  py::class_<network::TranscriptEntry>(m, "TranscriptEntry")
      .def_readonly("hop_from", &network::TranscriptEntry::from)
      .def_readonly("hop_to", &network::TranscriptEntry::to)
      .def_readonly("bytes", &network::TranscriptEntry::bytes)
      .def_readonly("elapsed_ns", &network::TranscriptEntry::elapsed_ns);
  py::class_<network::SessionResult>(m, "SessionResult")
      .def_readonly("answer", &network::SessionResult::answer)
      .def_readonly("walk", &network::SessionResult::walk)
      .def_readonly("transcript", &network::SessionResult::transcript);

  m.def("is_connected", &network::is_connected, py::arg("g"));
  m.def("find_cut_vertex", &network::find_cut_vertex, py::arg("g"));
  m.def("is_two_connected", &network::is_two_connected, py::arg("g"));
  m.def("find_query_loop", &network::find_query_loop, py::arg("g"),
        py::arg("enquirer"), py::arg("targets"));
  m.def(
      "dist_response",
      [](const paillier::PublicKey& pk, const matchmaking::QueryVector& x,
         const network::LoopWalk& walk,
         const std::map<int, matchmaking::InterestSet>& interests, Rng& rng) {
        return network::dist_response(pk, x, walk, interests, rng);
      },
      py::arg("pk"), py::arg("x"), py::arg("walk"), py::arg("interests"),
      py::arg("rng"));
  m.def("run_session", &network::run_session, py::arg("g"),
        py::arg("enquirer"), py::arg("w"), py::arg("world"),
        py::arg("interests"), py::arg("key_bits"), py::arg("rng"));

  // --- adversary ---------------------------------------------------------
  py::class_<adversary::MaliciousQuery>(m, "MaliciousQuery")
      .def_readonly("coefficients", &adversary::MaliciousQuery::coefficients)
      .def_readonly("randomizers", &adversary::MaliciousQuery::randomizers)
      .def_readonly("query", &adversary::MaliciousQuery::query);
  py::class_<adversary::SolutionSet>(m, "SolutionSet")
      .def_readonly("target", &adversary::SolutionSet::target)
      .def_readonly("coefficients", &adversary::SolutionSet::coefficients)
      .def_readonly("count", &adversary::SolutionSet::count)
      .def_readonly("tuples", &adversary::SolutionSet::tuples);
  py::class_<adversary::BezoutSplit>(m, "BezoutSplit")
      .def_readonly("alpha_bar", &adversary::BezoutSplit::alpha_bar)
      .def_readonly("beta_bar", &adversary::BezoutSplit::beta_bar)
      .def_readonly("alpha", &adversary::BezoutSplit::alpha)
      .def_readonly("beta", &adversary::BezoutSplit::beta);
  py::class_<adversary::AttackOutcome>(m, "AttackOutcome")
      .def_readonly("first", &adversary::AttackOutcome::first)
      .def_readonly("second", &adversary::AttackOutcome::second)
      .def_readonly("decrypted", &adversary::AttackOutcome::decrypted)
      .def_readonly("failure_bound", &adversary::AttackOutcome::failure_bound);

  m.def("craft_query", &adversary::craft_query, py::arg("pk"),
        py::arg("coefficients"), py::arg("rng"));
  m.def(
      "predict_decryption",
      [](const Bignum& n, const std::vector<Bignum>& coefficients,
         const std::vector<Bignum>& weights,
         const std::vector<bool>& memberships) {
        return adversary::predict_decryption(n, coefficients, weights,
                                             memberships);
      },
      py::arg("n"), py::arg("coefficients"), py::arg("weights"),
      py::arg("memberships"));
  m.def("enumerate_solutions", &adversary::enumerate_solutions, py::arg("n"),
        py::arg("coefficients"), py::arg("target"),
        py::arg("store_tuples") = false);
  m.def("enumerate_solutions_distributed",
        &adversary::enumerate_solutions_distributed, py::arg("n"),
        py::arg("coefficients"), py::arg("target"), py::arg("num_fleets"),
        py::arg("store_tuples") = false);
  m.def("bezout_split", &adversary::bezout_split, py::arg("p"), py::arg("q"));
  m.def("bezout_attack", &adversary::bezout_attack, py::arg("keys"),
        py::arg("world"), py::arg("w1"), py::arg("w2"), py::arg("responder"),
        py::arg("rng"));
}
